#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "curvlab/rational.hpp"

namespace curvlab {

using SymId = std::uint32_t;

// Process-wide interner for coordinate/parameter names. A symbol may carry an
// algebraic side relation sym^2 = q (rational), applied as a rewrite during
// canonicalization. The names "sqrt2" (square 2) and "eps" (square 1) are
// registered up front and reserved for that purpose.
class SymbolTable {
 public:
  static SymbolTable& instance();

  SymId intern(std::string_view name);
  const std::string& name(SymId id) const;
  bool known(std::string_view name) const;

  void declare_square(SymId id, const Rational& value);
  std::optional<Rational> square_of(SymId id) const;

  // deterministic order independent of interning sequence
  bool name_less(SymId a, SymId b) const;

 private:
  SymbolTable();
  struct Impl;
  Impl* impl_;
};

inline SymId intern_symbol(std::string_view name) { return SymbolTable::instance().intern(name); }
inline const std::string& symbol_name(SymId id) { return SymbolTable::instance().name(id); }
inline bool symbol_name_less(SymId a, SymId b) { return SymbolTable::instance().name_less(a, b); }

}  // namespace curvlab
