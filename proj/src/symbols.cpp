#include "curvlab/symbols.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace curvlab {

struct SymbolTable::Impl {
  mutable std::mutex mutex;
  std::vector<std::string> names;
  std::vector<std::optional<Rational>> squares;
  std::map<std::string, SymId, std::less<>> ids;
};

SymbolTable::SymbolTable() : impl_(new Impl) {
  // reserved algebraic symbols; see README
  declare_square(intern("sqrt2"), Rational(2));
  declare_square(intern("eps"), Rational(1));
}

SymbolTable& SymbolTable::instance() {
  static SymbolTable table;
  return table;
}

SymId SymbolTable::intern(std::string_view name) {
  std::lock_guard lock(impl_->mutex);
  auto it = impl_->ids.find(name);
  if (it != impl_->ids.end()) return it->second;
  SymId id = static_cast<SymId>(impl_->names.size());
  impl_->names.emplace_back(name);
  impl_->squares.emplace_back();
  impl_->ids.emplace(std::string(name), id);
  return id;
}

const std::string& SymbolTable::name(SymId id) const {
  std::lock_guard lock(impl_->mutex);
  return impl_->names.at(id);
}

bool SymbolTable::known(std::string_view name) const {
  std::lock_guard lock(impl_->mutex);
  return impl_->ids.find(name) != impl_->ids.end();
}

void SymbolTable::declare_square(SymId id, const Rational& value) {
  std::lock_guard lock(impl_->mutex);
  auto& slot = impl_->squares.at(id);
  if (slot && *slot != value) throw std::logic_error("conflicting square relation for " + impl_->names[id]);
  slot = value;
}

std::optional<Rational> SymbolTable::square_of(SymId id) const {
  std::lock_guard lock(impl_->mutex);
  return impl_->squares.at(id);
}

bool SymbolTable::name_less(SymId a, SymId b) const {
  std::lock_guard lock(impl_->mutex);
  return impl_->names.at(a) < impl_->names.at(b);
}

}  // namespace curvlab
