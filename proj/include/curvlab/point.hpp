#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "curvlab/rational.hpp"
#include "curvlab/symbols.hpp"

namespace curvlab {

// exact rational values for the free symbols of an expression
class PointAssignment {
 public:
  PointAssignment() = default;
  void set(SymId sym, Rational value);
  std::optional<Rational> get(SymId sym) const;
  const std::vector<std::pair<SymId, Rational>>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<std::pair<SymId, Rational>> entries_;  // sorted by symbol name
};

}  // namespace curvlab
