#include "curvlab/canon.hpp"

#include <algorithm>
#include <map>

#include "curvlab/expr.hpp"

namespace curvlab {

Rational pow_rational(const Rational& q, int k) {
  if (k == 0) return Rational(1);
  if (k < 0) {
    if (q == 0) throw SymbolicDivisionByZero();
    return Rational(1) / pow_rational(q, -k);
  }
  Rational out(1), base = q;
  int e = k;
  while (e > 0) {
    if (e & 1) out *= base;
    base *= base;
    e >>= 1;
  }
  return out;
}

}  // namespace curvlab

namespace curvlab::canon {

namespace {

int cmp_rational(const Rational& a, const Rational& b) {
  if (a < b) return -1;
  if (b < a) return 1;
  return 0;
}

int cmp_string(const std::string& a, const std::string& b) {
  return a.compare(b);
}

}  // namespace

int compare(const Monomial& a, const Monomial& b) {
  const std::size_t n = std::min(a.factors.size(), b.factors.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& [sa, pa] = a.factors[i];
    const auto& [sb, pb] = b.factors[i];
    if (sa != sb) return symbol_name_less(sa, sb) ? -1 : 1;
    if (pa != pb) return pa < pb ? -1 : 1;
  }
  if (a.factors.size() != b.factors.size()) return a.factors.size() < b.factors.size() ? -1 : 1;
  return 0;
}

int compare_key(const ExpTerm& a, const ExpTerm& b) {
  const bool oa = !a.opaque_key.empty(), ob = !b.opaque_key.empty();
  if (oa != ob) return oa ? 1 : -1;
  if (oa) return cmp_string(a.opaque_key, b.opaque_key);
  return compare(a.mono, b.mono);
}

int compare(const ExpArg& a, const ExpArg& b) {
  if (int c = cmp_rational(a.constant, b.constant)) return c;
  const std::size_t n = std::min(a.terms.size(), b.terms.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (int c = compare_key(a.terms[i], b.terms[i])) return c;
    if (int c = cmp_rational(a.terms[i].coeff, b.terms[i].coeff)) return c;
  }
  if (a.terms.size() != b.terms.size()) return a.terms.size() < b.terms.size() ? -1 : 1;
  return 0;
}

int compare_key(const Term& a, const Term& b) {
  if (int c = compare(a.exp, b.exp)) return c;
  return compare(a.mono, b.mono);
}

void reduce_monomial(Monomial& m, Rational& coeff) {
  auto& table = SymbolTable::instance();
  std::size_t w = 0;
  for (std::size_t i = 0; i < m.factors.size(); ++i) {
    auto [s, k] = m.factors[i];
    if (auto q = table.square_of(s); q && k >= 2) {
      coeff *= pow_rational(*q, k / 2);
      k %= 2;
    }
    if (k > 0) m.factors[w++] = {s, k};
  }
  m.factors.resize(w);
}

ExpArg exparg_add(const ExpArg& a, const ExpArg& b) {
  ExpArg out;
  out.constant = a.constant + b.constant;
  out.terms.reserve(a.terms.size() + b.terms.size());
  std::size_t i = 0, j = 0;
  while (i < a.terms.size() || j < b.terms.size()) {
    int c;
    if (i == a.terms.size()) c = 1;
    else if (j == b.terms.size()) c = -1;
    else c = compare_key(a.terms[i], b.terms[j]);
    if (c < 0) out.terms.push_back(a.terms[i++]);
    else if (c > 0) out.terms.push_back(b.terms[j++]);
    else {
      ExpTerm t = a.terms[i++];
      t.coeff += b.terms[j++].coeff;
      if (t.coeff != 0) out.terms.push_back(std::move(t));
    }
  }
  return out;
}

ExpArg exparg_sub(const ExpArg& a, const ExpArg& b) {
  ExpArg nb = b;
  nb.constant = -nb.constant;
  for (auto& t : nb.terms) t.coeff = -t.coeff;
  return exparg_add(a, nb);
}

bool Poly::rational_const(Rational* out) const {
  if (terms.empty()) {
    if (out) *out = 0;
    return true;
  }
  if (terms.size() == 1 && terms[0].mono.empty() && terms[0].exp.zero()) {
    if (out) *out = terms[0].coeff;
    return true;
  }
  return false;
}

bool Canon::rational_const(Rational* out) const {
  Rational n, d;
  if (num.rational_const(&n) && den.rational_const(&d)) {
    if (out) *out = n / d;
    return true;
  }
  return false;
}

Poly poly_const(const Rational& c) {
  Poly p;
  if (c != 0) p.terms.push_back(Term{c, {}, {}});
  return p;
}

Poly poly_symbol(SymId s) {
  Poly p;
  p.terms.push_back(Term{Rational(1), Monomial{{{s, 1}}}, {}});
  return p;
}

namespace {

struct TermKeyLess {
  bool operator()(const Term& a, const Term& b) const { return compare_key(a, b) < 0; }
};

Poly collect(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), TermKeyLess{});
  Poly out;
  out.terms.reserve(terms.size());
  for (auto& t : terms) {
    if (t.coeff == 0) continue;
    if (!out.terms.empty() && compare_key(out.terms.back(), t) == 0) {
      out.terms.back().coeff += t.coeff;
      if (out.terms.back().coeff == 0) out.terms.pop_back();
    } else {
      out.terms.push_back(std::move(t));
    }
  }
  return out;
}

Monomial mono_mul(const Monomial& a, const Monomial& b, Rational& coeff) {
  Monomial out;
  out.factors.reserve(a.factors.size() + b.factors.size());
  std::size_t i = 0, j = 0;
  while (i < a.factors.size() || j < b.factors.size()) {
    if (i == a.factors.size()) out.factors.push_back(b.factors[j++]);
    else if (j == b.factors.size()) out.factors.push_back(a.factors[i++]);
    else if (a.factors[i].first == b.factors[j].first) {
      out.factors.push_back({a.factors[i].first, a.factors[i].second + b.factors[j].second});
      ++i, ++j;
    } else if (symbol_name_less(a.factors[i].first, b.factors[j].first)) {
      out.factors.push_back(a.factors[i++]);
    } else {
      out.factors.push_back(b.factors[j++]);
    }
  }
  reduce_monomial(out, coeff);
  return out;
}

}  // namespace

Poly add(const Poly& a, const Poly& b) {
  if (a.zero()) return b;
  if (b.zero()) return a;
  std::vector<Term> terms;
  terms.reserve(a.terms.size() + b.terms.size());
  terms.insert(terms.end(), a.terms.begin(), a.terms.end());
  terms.insert(terms.end(), b.terms.begin(), b.terms.end());
  return collect(std::move(terms));
}

Poly mul(const Poly& a, const Poly& b) {
  if (a.zero() || b.zero()) return {};
  Rational ca, cb;
  if (a.rational_const(&ca)) {
    Poly out = b;
    for (auto& t : out.terms) t.coeff *= ca;
    return out;
  }
  if (b.rational_const(&cb)) {
    Poly out = a;
    for (auto& t : out.terms) t.coeff *= cb;
    return out;
  }
  std::vector<Term> terms;
  terms.reserve(a.terms.size() * b.terms.size());
  for (const auto& ta : a.terms) {
    for (const auto& tb : b.terms) {
      Term t;
      t.coeff = ta.coeff * tb.coeff;
      t.mono = mono_mul(ta.mono, tb.mono, t.coeff);
      t.exp = exparg_add(ta.exp, tb.exp);
      terms.push_back(std::move(t));
    }
  }
  return collect(std::move(terms));
}

Poly negate(const Poly& a) {
  Poly out = a;
  for (auto& t : out.terms) t.coeff = -t.coeff;
  return out;
}

Canon normalized(Poly num, Poly den) {
  if (den.zero()) throw SymbolicDivisionByZero();
  if (num.zero()) return Canon{{}, poly_const(Rational(1))};

  // joint monomial content over numerator and denominator
  std::map<SymId, int> content;
  bool first = true;
  auto scan = [&](const Poly& p) {
    for (const auto& t : p.terms) {
      if (first) {
        for (const auto& [s, k] : t.mono.factors) content[s] = k;
        first = false;
        continue;
      }
      for (auto it = content.begin(); it != content.end();) {
        int k = 0;
        for (const auto& [s, p2] : t.mono.factors)
          if (s == it->first) k = p2;
        if (k == 0) it = content.erase(it);
        else {
          it->second = std::min(it->second, k);
          ++it;
        }
      }
    }
  };
  scan(num);
  scan(den);
  auto strip_mono = [&](Poly& p) {
    for (auto& t : p.terms) {
      std::size_t w = 0;
      for (auto [s, k] : t.mono.factors) {
        auto it = content.find(s);
        if (it != content.end()) k -= it->second;
        if (k > 0) t.mono.factors[w++] = {s, k};
      }
      t.mono.factors.resize(w);
    }
  };
  if (!content.empty()) {
    strip_mono(num);
    strip_mono(den);
  }

  // joint exp content: coefficient-wise minimum over every term (missing = 0)
  ExpArg exp_content;
  {
    bool started = false;
    auto scan_exp = [&](const Poly& p) {
      for (const auto& t : p.terms) {
        if (!started) {
          exp_content = t.exp;
          started = true;
          continue;
        }
        exp_content.constant = std::min(exp_content.constant, t.exp.constant);
        ExpArg merged;
        std::size_t i = 0, j = 0;
        const auto& cur = exp_content.terms;
        const auto& other = t.exp.terms;
        while (i < cur.size() || j < other.size()) {
          int c;
          if (i == cur.size()) c = 1;
          else if (j == other.size()) c = -1;
          else c = compare_key(cur[i], other[j]);
          if (c < 0) {
            ExpTerm e = cur[i++];
            e.coeff = std::min(e.coeff, Rational(0));
            if (e.coeff != 0) merged.terms.push_back(std::move(e));
          } else if (c > 0) {
            ExpTerm e = other[j++];
            e.coeff = std::min(e.coeff, Rational(0));
            if (e.coeff != 0) merged.terms.push_back(std::move(e));
          } else {
            ExpTerm e = cur[i++];
            e.coeff = std::min(e.coeff, other[j++].coeff);
            if (e.coeff != 0) merged.terms.push_back(std::move(e));
          }
        }
        exp_content.terms = std::move(merged.terms);
      }
    };
    scan_exp(num);
    scan_exp(den);
  }
  if (!exp_content.zero()) {
    for (auto& t : num.terms) t.exp = exparg_sub(t.exp, exp_content);
    for (auto& t : den.terms) t.exp = exparg_sub(t.exp, exp_content);
  }

  // content removal can reorder keys
  std::sort(num.terms.begin(), num.terms.end(), TermKeyLess{});
  std::sort(den.terms.begin(), den.terms.end(), TermKeyLess{});

  const Rational lead = den.terms.back().coeff;
  if (lead != 1) {
    for (auto& t : num.terms) t.coeff /= lead;
    for (auto& t : den.terms) t.coeff /= lead;
  }
  return Canon{std::move(num), std::move(den)};
}

Canon canon_const(const Rational& c) { return Canon{poly_const(c), poly_const(Rational(1))}; }

Canon canon_symbol(SymId s) { return Canon{poly_symbol(s), poly_const(Rational(1))}; }

Canon add(const Canon& a, const Canon& b) {
  if (a.zero()) return b;
  if (b.zero()) return a;
  Rational da, db;
  if (a.den.rational_const(&da) && da == 1 && b.den.rational_const(&db) && db == 1)
    return normalized(add(a.num, b.num), poly_const(Rational(1)));
  return normalized(add(mul(a.num, b.den), mul(b.num, a.den)), mul(a.den, b.den));
}

Canon sub(const Canon& a, const Canon& b) { return add(a, negate(b)); }

Canon mul(const Canon& a, const Canon& b) {
  if (a.zero() || b.zero()) return canon_const(Rational(0));
  Rational c;
  if (a.rational_const(&c)) {
    Canon out = b;
    for (auto& t : out.num.terms) t.coeff *= c;
    return out;
  }
  if (b.rational_const(&c)) {
    Canon out = a;
    for (auto& t : out.num.terms) t.coeff *= c;
    return out;
  }
  return normalized(mul(a.num, b.num), mul(a.den, b.den));
}

Canon div(const Canon& a, const Canon& b) {
  if (b.zero()) throw SymbolicDivisionByZero();
  if (a.zero()) return canon_const(Rational(0));
  return normalized(mul(a.num, b.den), mul(a.den, b.num));
}

Canon negate(const Canon& a) {
  Canon out = a;
  for (auto& t : out.num.terms) t.coeff = -t.coeff;
  return out;
}

Canon pow(const Canon& a, int k) {
  if (k == 0) return canon_const(Rational(1));
  if (k < 0) return div(canon_const(Rational(1)), pow(a, -k));
  Canon out = canon_const(Rational(1));
  Canon base = a;
  int e = k;
  while (e > 0) {
    if (e & 1) out = mul(out, base);
    if (e >>= 1) base = mul(base, base);
  }
  return out;
}

Canon make_exp(const Canon& argument) {
  if (argument.zero()) return canon_const(Rational(1));
  ExpArg arg;
  Rational dc;
  if (argument.den.rational_const(&dc)) {
    std::vector<ExpTerm> raw;
    for (const auto& t : argument.num.terms) {
      const Rational c = t.coeff / dc;
      if (t.exp.zero()) {
        if (t.mono.empty()) {
          arg.constant += c;
        } else {
          ExpTerm e;
          e.mono = t.mono;
          e.coeff = c;
          reduce_monomial(e.mono, e.coeff);  // may fold square relations into coeff
          if (e.mono.empty()) arg.constant += e.coeff;  // fully reduced to a constant
          else raw.push_back(std::move(e));
        }
      } else {
        // exp inside exp: keep the whole multiplicand as an opaque atom
        Canon piece{Poly{{Term{Rational(1), t.mono, t.exp}}}, poly_const(Rational(1))};
        Expr tree = canon_to_expr(piece);
        ExpTerm e;
        e.opaque_key = tree.str();
        e.opaque_node = tree.node();
        e.coeff = c;
        raw.push_back(std::move(e));
      }
    }
    std::sort(raw.begin(), raw.end(), [](const ExpTerm& a, const ExpTerm& b) { return compare_key(a, b) < 0; });
    for (auto& e : raw) {
      if (!arg.terms.empty() && compare_key(arg.terms.back(), e) == 0) {
        arg.terms.back().coeff += e.coeff;
        if (arg.terms.back().coeff == 0) arg.terms.pop_back();
      } else if (e.coeff != 0) {
        arg.terms.push_back(std::move(e));
      }
    }
  } else {
    Expr tree = canon_to_expr(argument);
    ExpTerm e;
    e.opaque_key = tree.str();
    e.opaque_node = tree.node();
    e.coeff = 1;
    arg.terms.push_back(std::move(e));
  }
  if (arg.zero()) return canon_const(Rational(1));
  Poly p;
  p.terms.push_back(Term{Rational(1), {}, std::move(arg)});
  return Canon{std::move(p), poly_const(Rational(1))};
}

}  // namespace curvlab::canon
