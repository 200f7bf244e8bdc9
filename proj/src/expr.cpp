#include "curvlab/expr.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace curvlab {

namespace {

std::shared_ptr<const ExprNode> make_node(ExprNode&& n) {
  return std::make_shared<const ExprNode>(std::move(n));
}

}  // namespace

Expr::Expr() {
  ExprNode n;
  n.kind = ExprKind::Number;
  n.value = 0;
  node_ = make_node(std::move(n));
}

Expr Expr::from_node(std::shared_ptr<const ExprNode> n) {
  Expr e;
  e.node_ = std::move(n);
  return e;
}

Expr Expr::number(Rational v) {
  ExprNode n;
  n.kind = ExprKind::Number;
  n.value = std::move(v);
  return from_node(make_node(std::move(n)));
}

Expr Expr::number(long long v) { return number(Rational(v)); }

Expr Expr::rational(long long num, long long den) { return number(Rational(num) / den); }

Expr Expr::symbol(std::string_view name) { return symbol(intern_symbol(name)); }

Expr Expr::symbol(SymId id) {
  ExprNode n;
  n.kind = ExprKind::Symbol;
  n.sym = id;
  return from_node(make_node(std::move(n)));
}

namespace {

Expr nary(ExprKind kind, std::vector<Expr> kids) {
  ExprNode n;
  n.kind = kind;
  n.kids = std::move(kids);
  return Expr::from_node(std::make_shared<const ExprNode>(std::move(n)));
}

}  // namespace

Expr operator+(const Expr& a, const Expr& b) { return nary(ExprKind::Add, {a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return nary(ExprKind::Add, {a, -b}); }
Expr operator*(const Expr& a, const Expr& b) { return nary(ExprKind::Mul, {a, b}); }
Expr operator/(const Expr& a, const Expr& b) { return nary(ExprKind::Div, {a, b}); }
Expr operator-(const Expr& a) { return nary(ExprKind::Mul, {Expr::number(-1), a}); }

Expr Expr::pow(int k) const {
  ExprNode n;
  n.kind = ExprKind::Pow;
  n.kids = {*this};
  n.exponent = k;
  return from_node(make_node(std::move(n)));
}

Expr Expr::exp(Expr arg) { return nary(ExprKind::Exp, {std::move(arg)}); }
Expr Expr::sinh(Expr arg) { return nary(ExprKind::Sinh, {std::move(arg)}); }
Expr Expr::cosh(Expr arg) { return nary(ExprKind::Cosh, {std::move(arg)}); }

ExprKind Expr::kind() const { return node_->kind; }
std::size_t Expr::arity() const { return node_->kids.size(); }
const Expr& Expr::child(std::size_t i) const { return node_->kids.at(i); }
const Rational& Expr::number_value() const { return node_->value; }
SymId Expr::symbol_id() const { return node_->sym; }
int Expr::exponent() const { return node_->exponent; }
bool Expr::is_canonical() const { return node_->canonical_form; }

const canon::Canon& Expr::canon_form() const {
  if (node_->cached) return *node_->cached;
  canon::Canon c;
  switch (node_->kind) {
    case ExprKind::Number:
      c = canon::canon_const(node_->value);
      break;
    case ExprKind::Symbol:
      c = canon::canon_symbol(node_->sym);
      break;
    case ExprKind::Add: {
      c = canon::canon_const(Rational(0));
      for (const auto& k : node_->kids) c = canon::add(c, k.canon_form());
      break;
    }
    case ExprKind::Mul: {
      c = canon::canon_const(Rational(1));
      for (const auto& k : node_->kids) {
        if (k.canon_form().zero()) {
          c = canon::canon_const(Rational(0));
          break;
        }
        c = canon::mul(c, k.canon_form());
      }
      break;
    }
    case ExprKind::Pow:
      c = canon::pow(node_->kids[0].canon_form(), node_->exponent);
      break;
    case ExprKind::Div:
      c = canon::div(node_->kids[0].canon_form(), node_->kids[1].canon_form());
      break;
    case ExprKind::Exp:
      c = canon::make_exp(node_->kids[0].canon_form());
      break;
    case ExprKind::Sinh:
    case ExprKind::Cosh: {
      const auto& u = node_->kids[0].canon_form();
      canon::Canon ep = canon::make_exp(u);
      canon::Canon em = canon::make_exp(canon::negate(u));
      canon::Canon diff = node_->kind == ExprKind::Sinh ? canon::sub(ep, em) : canon::add(ep, em);
      c = canon::div(diff, canon::canon_const(Rational(2)));
      break;
    }
  }
  node_->cached = std::make_shared<const canon::Canon>(std::move(c));
  return *node_->cached;
}

bool Expr::is_zero() const { return canon_form().zero(); }

bool Expr::is_one() const {
  Rational v;
  return canon_form().rational_const(&v) && v == 1;
}

bool Expr::same_as(const Expr& other) const { return (*this - other).is_zero(); }

bool Expr::identical(const Expr& other) const {
  if (node_ == other.node_) return true;
  if (node_->kind != other.node_->kind) return false;
  switch (node_->kind) {
    case ExprKind::Number:
      return node_->value == other.node_->value;
    case ExprKind::Symbol:
      return node_->sym == other.node_->sym;
    case ExprKind::Pow:
      if (node_->exponent != other.node_->exponent) return false;
      break;
    default:
      break;
  }
  if (node_->kids.size() != other.node_->kids.size()) return false;
  for (std::size_t i = 0; i < node_->kids.size(); ++i)
    if (!node_->kids[i].identical(other.node_->kids[i])) return false;
  return true;
}

bool Expr::free_of(const std::vector<SymId>& syms) const {
  switch (node_->kind) {
    case ExprKind::Number:
      return true;
    case ExprKind::Symbol:
      for (SymId s : syms)
        if (s == node_->sym) return false;
      return true;
    default:
      for (const auto& k : node_->kids)
        if (!k.free_of(syms)) return false;
      return true;
  }
}

// ---------------------------------------------------------------------------
// canonical form -> tree

namespace {

Expr mono_to_expr(const canon::Monomial& m) {
  std::vector<Expr> factors;
  for (const auto& [s, k] : m.factors) {
    Expr base = Expr::symbol(s);
    factors.push_back(k == 1 ? base : base.pow(k));
  }
  if (factors.empty()) return Expr::number(1);
  if (factors.size() == 1) return factors[0];
  return nary(ExprKind::Mul, std::move(factors));
}

Expr exparg_to_expr(const canon::ExpArg& arg) {
  std::vector<Expr> addends;
  if (arg.constant != 0) addends.push_back(Expr::number(arg.constant));
  for (const auto& t : arg.terms) {
    Expr base = t.opaque_key.empty() ? mono_to_expr(t.mono) : Expr::from_node(t.opaque_node);
    if (t.coeff == 1) addends.push_back(base);
    else addends.push_back(nary(ExprKind::Mul, {Expr::number(t.coeff), base}));
  }
  if (addends.empty()) return Expr::number(0);
  if (addends.size() == 1) return addends[0];
  return nary(ExprKind::Add, std::move(addends));
}

Expr term_to_expr(const canon::Term& t) {
  std::vector<Expr> factors;
  if (t.coeff != 1 || (t.mono.empty() && t.exp.zero())) factors.push_back(Expr::number(t.coeff));
  for (const auto& [s, k] : t.mono.factors) {
    Expr base = Expr::symbol(s);
    factors.push_back(k == 1 ? base : base.pow(k));
  }
  if (!t.exp.zero()) factors.push_back(Expr::exp(exparg_to_expr(t.exp)));
  if (factors.size() == 1) return factors[0];
  return nary(ExprKind::Mul, std::move(factors));
}

Expr poly_to_expr(const canon::Poly& p) {
  if (p.terms.empty()) return Expr::number(0);
  if (p.terms.size() == 1) return term_to_expr(p.terms[0]);
  std::vector<Expr> addends;
  addends.reserve(p.terms.size());
  for (const auto& t : p.terms) addends.push_back(term_to_expr(t));
  return nary(ExprKind::Add, std::move(addends));
}

}  // namespace

Expr canon_to_expr(const canon::Canon& c) {
  Rational dc;
  Expr tree;
  if (c.den.rational_const(&dc)) {
    if (dc == 1) {
      tree = poly_to_expr(c.num);
    } else {
      canon::Poly scaled = c.num;
      for (auto& t : scaled.terms) t.coeff /= dc;
      tree = poly_to_expr(scaled);
    }
  } else {
    tree = nary(ExprKind::Div, {poly_to_expr(c.num), poly_to_expr(c.den)});
  }
  return tree;
}

Expr Expr::canonical() const {
  if (node_->canonical_form) return *this;
  const canon::Canon& c = canon_form();
  Expr tree = canon_to_expr(c);
  ExprNode n = *tree.node();
  n.canonical_form = true;
  n.cached = node_->cached;
  return from_node(make_node(std::move(n)));
}

// ---------------------------------------------------------------------------
// calculus / evaluation

Expr Expr::derivative(SymId coord) const {
  switch (node_->kind) {
    case ExprKind::Number:
      return Expr();
    case ExprKind::Symbol:
      return node_->sym == coord ? number(1) : Expr();
    case ExprKind::Add: {
      std::vector<Expr> kids;
      kids.reserve(arity());
      for (const auto& k : node_->kids) kids.push_back(k.derivative(coord));
      return nary(ExprKind::Add, std::move(kids)).canonical();
    }
    case ExprKind::Mul: {
      std::vector<Expr> addends;
      for (std::size_t i = 0; i < arity(); ++i) {
        std::vector<Expr> factors = node_->kids;
        factors[i] = node_->kids[i].derivative(coord);
        addends.push_back(nary(ExprKind::Mul, std::move(factors)));
      }
      return nary(ExprKind::Add, std::move(addends)).canonical();
    }
    case ExprKind::Pow: {
      const Expr& b = node_->kids[0];
      const int k = node_->exponent;
      if (k == 0) return Expr();
      return (number(k) * b.pow(k - 1) * b.derivative(coord)).canonical();
    }
    case ExprKind::Div: {
      const Expr& n = node_->kids[0];
      const Expr& d = node_->kids[1];
      return ((n.derivative(coord) * d - n * d.derivative(coord)) / (d * d)).canonical();
    }
    case ExprKind::Exp:
      return (node_->kids[0].derivative(coord) * *this).canonical();
    case ExprKind::Sinh:
      return (node_->kids[0].derivative(coord) * cosh(node_->kids[0])).canonical();
    case ExprKind::Cosh:
      return (node_->kids[0].derivative(coord) * sinh(node_->kids[0])).canonical();
  }
  return Expr();
}

Expr Expr::substituted(const std::vector<std::pair<SymId, Expr>>& bindings) const {
  struct Rec {
    const std::vector<std::pair<SymId, Expr>>& b;
    Expr run(const Expr& e) const {
      switch (e.kind()) {
        case ExprKind::Number:
          return e;
        case ExprKind::Symbol:
          for (const auto& [s, repl] : b)
            if (s == e.symbol_id()) return repl;
          return e;
        default: {
          std::vector<Expr> kids;
          kids.reserve(e.arity());
          bool changed = false;
          for (std::size_t i = 0; i < e.arity(); ++i) {
            kids.push_back(run(e.child(i)));
            changed = changed || kids.back().node() != e.child(i).node();
          }
          if (!changed) return e;
          ExprNode n = *e.node();
          n.kids = std::move(kids);
          n.cached = nullptr;
          n.canonical_form = false;
          return from_node(std::make_shared<const ExprNode>(std::move(n)));
        }
      }
    }
  };
  return Rec{bindings}.run(*this).canonical();
}

double Expr::eval(const PointAssignment& point) const {
  switch (node_->kind) {
    case ExprKind::Number:
      return to_double(node_->value);
    case ExprKind::Symbol: {
      if (auto sq = SymbolTable::instance().square_of(node_->sym)) return std::sqrt(to_double(*sq));
      if (auto v = point.get(node_->sym)) return to_double(*v);
      throw EvalError("unassigned symbol: " + symbol_name(node_->sym));
    }
    case ExprKind::Add: {
      double s = 0;
      for (const auto& k : node_->kids) s += k.eval(point);
      return s;
    }
    case ExprKind::Mul: {
      double p = 1;
      for (const auto& k : node_->kids) p *= k.eval(point);
      return p;
    }
    case ExprKind::Pow:
      return std::pow(node_->kids[0].eval(point), node_->exponent);
    case ExprKind::Div: {
      const double d = node_->kids[1].eval(point);
      if (std::abs(d) < 1e-300) throw EvalError("division by numerical zero");
      return node_->kids[0].eval(point) / d;
    }
    case ExprKind::Exp:
      return std::exp(node_->kids[0].eval(point));
    case ExprKind::Sinh:
      return std::sinh(node_->kids[0].eval(point));
    case ExprKind::Cosh:
      return std::cosh(node_->kids[0].eval(point));
  }
  return 0;
}

// ---------------------------------------------------------------------------
// rendering

namespace {

bool needs_parens_in_mul(const Expr& e) {
  return e.kind() == ExprKind::Add || (e.kind() == ExprKind::Number && e.number_value() < 0);
}

std::string render(const Expr& e);

std::string render_number(const Rational& v) { return v.str(); }

std::string render_mul(const Expr& e) {
  std::string out;
  for (std::size_t i = 0; i < e.arity(); ++i) {
    const Expr& k = e.child(i);
    // canonical trees lead with the rational coefficient; show -1*x as -x
    if (i == 0 && k.kind() == ExprKind::Number && k.number_value() == -1 && e.arity() > 1) {
      out += "-";
      continue;
    }
    if (!out.empty() && out != "-") out += "*";
    std::string part = render(k);
    if (needs_parens_in_mul(k) && i > 0) part = "(" + part + ")";
    out += part;
  }
  return out;
}

std::string render(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Number:
      return render_number(e.number_value());
    case ExprKind::Symbol:
      return symbol_name(e.symbol_id());
    case ExprKind::Add: {
      std::string out;
      for (std::size_t i = 0; i < e.arity(); ++i) {
        std::string part = render(e.child(i));
        if (i == 0) {
          out = part;
        } else if (!part.empty() && part[0] == '-') {
          out += " - " + part.substr(1);
        } else {
          out += " + " + part;
        }
      }
      return out.empty() ? "0" : out;
    }
    case ExprKind::Mul:
      return render_mul(e);
    case ExprKind::Pow: {
      const Expr& b = e.child(0);
      std::string base = render(b);
      if (b.kind() != ExprKind::Symbol &&
          !(b.kind() == ExprKind::Exp || b.kind() == ExprKind::Sinh || b.kind() == ExprKind::Cosh) &&
          !(b.kind() == ExprKind::Number && b.number_value() >= 0 &&
            boost::multiprecision::denominator(b.number_value()) == 1))
        base = "(" + base + ")";
      return base + "^" + std::to_string(e.exponent());
    }
    case ExprKind::Div: {
      const Expr& n = e.child(0);
      const Expr& d = e.child(1);
      std::string num = render(n);
      if (n.kind() == ExprKind::Add) num = "(" + num + ")";
      return num + "/(" + render(d) + ")";
    }
    case ExprKind::Exp:
      return "exp(" + render(e.child(0)) + ")";
    case ExprKind::Sinh:
      return "sinh(" + render(e.child(0)) + ")";
    case ExprKind::Cosh:
      return "cosh(" + render(e.child(0)) + ")";
  }
  return "0";
}

}  // namespace

std::string Expr::str() const { return render(*this); }

// ---------------------------------------------------------------------------
// parsing (grammar frozen; see README)

namespace {

struct Parser {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eof() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  bool accept(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos);
  }

  Expr parse_expr() {
    Expr e = parse_term();
    while (true) {
      if (accept('+')) e = e + parse_term();
      else if (accept('-')) e = e - parse_term();
      else return e;
    }
  }

  Expr parse_term() {
    Expr e = parse_factor();
    while (true) {
      if (accept('*')) e = e * parse_factor();
      else if (accept('/')) e = e / parse_factor();
      else return e;
    }
  }

  Expr parse_factor() {
    Expr base = parse_base();
    if (accept('^')) {
      skip_ws();
      const std::size_t at = pos;
      bool neg = false;
      if (pos < text.size() && text[pos] == '-') {
        neg = true;
        ++pos;
      }
      if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
        throw ParseError("non-integer exponent", at);
      long long v = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        v = v * 10 + (text[pos] - '0');
        if (v > 1'000'000) throw ParseError("exponent too large", at);
        ++pos;
      }
      if (pos < text.size() && text[pos] == '.') throw ParseError("non-integer exponent", at);
      return base.pow(static_cast<int>(neg ? -v : v));
    }
    return base;
  }

  Expr parse_base() {
    skip_ws();
    if (pos >= text.size()) throw ParseError("unexpected end of input", pos);
    const char c = text[pos];
    if (c == '-') {
      ++pos;
      return -parse_factor();
    }
    if (c == '(') {
      ++pos;
      Expr e = parse_expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer v = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        v = v * 10 + (text[pos] - '0');
        ++pos;
      }
      if (pos < text.size() && text[pos] == '.') throw ParseError("decimal literals not supported", pos);
      return Expr::number(Rational(v));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos;
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
        ++pos;
      const std::string_view name = text.substr(start, pos - start);
      if (name == "exp" || name == "sinh" || name == "cosh") {
        expect('(');
        Expr arg = parse_expr();
        expect(')');
        if (name == "exp") return Expr::exp(arg);
        if (name == "sinh") return Expr::sinh(arg);
        return Expr::cosh(arg);
      }
      return Expr::symbol(name);
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos);
  }
};

}  // namespace

Expr parse_expr(std::string_view text) {
  Parser p{text};
  Expr e = p.parse_expr();
  if (!p.eof()) throw ParseError("trailing input", p.pos);
  return e;
}

}  // namespace curvlab
