#include "causalg/variable_table.hpp"

namespace causalg {

int VariableTable::add(const std::string& name, VarKind kind) {
  if (frozen_) throw Error("variable table is frozen; cannot add '" + name + "'");
  if (index_.count(name))
    throw Error("duplicate variable name '" + name + "'");
  int idx = static_cast<int>(entries_.size());
  entries_.push_back({name, kind, false});
  index_.emplace(name, idx);
  return idx;
}

int VariableTable::intern(const std::string& name, VarKind kind) {
  auto it = index_.find(name);
  if (it != index_.end()) return it->second;
  if (frozen_) throw Error("unknown identifier '" + name + "'");
  return add(name, kind);
}

std::optional<int> VariableTable::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

}  // namespace causalg
