#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "curvlab/canon.hpp"
#include "curvlab/point.hpp"
#include "curvlab/rational.hpp"
#include "curvlab/symbols.hpp"

namespace curvlab {

enum class ExprKind { Number, Symbol, Add, Mul, Pow, Div, Exp, Sinh, Cosh };

class Expr;

struct ExprNode {
  ExprKind kind = ExprKind::Number;
  Rational value;     // Number
  SymId sym = 0;      // Symbol
  std::vector<Expr> kids;
  int exponent = 1;   // Pow
  bool canonical_form = false;
  mutable std::shared_ptr<const canon::Canon> cached;
};

struct ParseError : std::runtime_error {
  std::size_t offset;
  ParseError(const std::string& what, std::size_t off)
      : std::runtime_error(what + " (at byte " + std::to_string(off) + ")"), offset(off) {}
};

struct SymbolicDivisionByZero : std::runtime_error {
  SymbolicDivisionByZero() : std::runtime_error("division by an expression that is identically zero") {}
};

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Immutable symbolic scalar: rational functions over exp-polynomials in
// coordinates and parameters. Arithmetic builds trees lazily; the canonical
// quotient form is computed once per node and cached.
class Expr {
 public:
  Expr();  // zero
  static Expr number(Rational v);
  static Expr number(long long v);
  static Expr rational(long long num, long long den);
  static Expr symbol(std::string_view name);
  static Expr symbol(SymId id);
  static Expr exp(Expr arg);
  static Expr sinh(Expr arg);
  static Expr cosh(Expr arg);

  Expr pow(int k) const;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);
  Expr& operator+=(const Expr& b) { return *this = *this + b; }
  Expr& operator-=(const Expr& b) { return *this = *this - b; }
  Expr& operator*=(const Expr& b) { return *this = *this * b; }
  Expr& operator/=(const Expr& b) { return *this = *this / b; }

  // tree introspection
  ExprKind kind() const;
  std::size_t arity() const;
  const Expr& child(std::size_t i) const;
  const Rational& number_value() const;
  SymId symbol_id() const;
  int exponent() const;

  Expr canonical() const;
  bool is_canonical() const;
  bool is_zero() const;
  bool is_one() const;
  // exact semantic equality via cross-multiplied difference
  bool same_as(const Expr& other) const;
  // structural tree equality
  bool identical(const Expr& other) const;
  // true when the expression involves none of the given symbols
  bool free_of(const std::vector<SymId>& syms) const;

  Expr derivative(SymId coord) const;
  Expr substituted(const std::vector<std::pair<SymId, Expr>>& bindings) const;
  double eval(const PointAssignment& point) const;
  std::string str() const;

  const canon::Canon& canon_form() const;
  const std::shared_ptr<const ExprNode>& node() const { return node_; }
  static Expr from_node(std::shared_ptr<const ExprNode> n);

 private:
  std::shared_ptr<const ExprNode> node_;
};

Expr parse_expr(std::string_view text);

// canonical tree for a canon form (used by canonical() and by exp's opaque atoms)
Expr canon_to_expr(const canon::Canon& c);

}  // namespace curvlab
