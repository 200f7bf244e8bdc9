#include "curvlab/point.hpp"

#include <algorithm>

namespace curvlab {

void PointAssignment::set(SymId sym, Rational value) {
  auto it = std::find_if(entries_.begin(), entries_.end(),
                         [&](const auto& e) { return e.first == sym; });
  if (it != entries_.end()) {
    it->second = std::move(value);
    return;
  }
  entries_.emplace_back(sym, std::move(value));
  std::sort(entries_.begin(), entries_.end(),
            [](const auto& a, const auto& b) { return symbol_name_less(a.first, b.first); });
}

std::optional<Rational> PointAssignment::get(SymId sym) const {
  for (const auto& [s, v] : entries_)
    if (s == sym) return v;
  return std::nullopt;
}

}  // namespace curvlab
