#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "curvlab/rational.hpp"
#include "curvlab/symbols.hpp"

namespace curvlab {
struct ExprNode;
}

// Canonical form of a scalar expression: a quotient N/D of expanded
// polynomials whose terms are c * prod(sym^k) * exp(arg), with rational c,
// positive integer k and arg a rational-linear combination of monomials
// (plus a rational constant). Arguments of exp that do not fit that shape are
// kept as opaque atoms compared structurally.
namespace curvlab::canon {

struct Monomial {
  std::vector<std::pair<SymId, int>> factors;  // sorted by symbol name, powers >= 1
  bool empty() const { return factors.empty(); }
};
int compare(const Monomial& a, const Monomial& b);

// one additive piece of an exp argument: coeff * mono  |  coeff * opaque
struct ExpTerm {
  Monomial mono;
  std::string opaque_key;                       // empty => monomial key
  std::shared_ptr<const ExprNode> opaque_node;  // set iff opaque_key nonempty
  Rational coeff;
};
int compare_key(const ExpTerm& a, const ExpTerm& b);

struct ExpArg {
  Rational constant;
  std::vector<ExpTerm> terms;  // sorted by key, nonzero coeffs
  bool zero() const { return constant == 0 && terms.empty(); }
};
int compare(const ExpArg& a, const ExpArg& b);
ExpArg exparg_add(const ExpArg& a, const ExpArg& b);
ExpArg exparg_sub(const ExpArg& a, const ExpArg& b);

struct Term {
  Rational coeff;
  Monomial mono;
  ExpArg exp;
};
int compare_key(const Term& a, const Term& b);  // (exp argument, symbol powers)

struct Poly {
  std::vector<Term> terms;  // sorted by key, nonzero coeffs
  bool zero() const { return terms.empty(); }
  bool rational_const(Rational* out = nullptr) const;
};

Poly poly_const(const Rational& c);
Poly poly_symbol(SymId s);
Poly add(const Poly& a, const Poly& b);
Poly mul(const Poly& a, const Poly& b);
Poly negate(const Poly& a);

struct Canon {
  Poly num;
  Poly den;  // nonzero; leading coefficient 1 after normalization
  bool zero() const { return num.zero(); }
  bool rational_const(Rational* out = nullptr) const;
};

// builds the normal form: joint monomial/exp content extracted, terms sorted,
// denominator leading coefficient scaled to 1; throws SymbolicDivisionByZero
// if den is the zero polynomial
Canon normalized(Poly num, Poly den);

Canon canon_const(const Rational& c);
Canon canon_symbol(SymId s);
Canon add(const Canon& a, const Canon& b);
Canon sub(const Canon& a, const Canon& b);
Canon mul(const Canon& a, const Canon& b);
Canon div(const Canon& a, const Canon& b);
Canon negate(const Canon& a);
Canon pow(const Canon& a, int k);
Canon make_exp(const Canon& argument);

// applies declared square relations: s^k -> q^(k/2) * s^(k%2), folding the
// extracted rational into coeff
void reduce_monomial(Monomial& m, Rational& coeff);

}  // namespace curvlab::canon
