#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "causalg/errors.hpp"

namespace causalg {

/// Role of an indeterminate inside a model or an identifiability query.
enum class VarKind { Parameter, Atom, Manifest, Auxiliary, Dummy };

/// Maps symbolic indeterminate names (e.g. `pi(X3=1|X1=2,X2=1)`, `t1`,
/// `b_y`) to dense indices 0..n-1. Index order defines the default lex
/// priority. Names are stored verbatim, including argument lists.
class VariableTable {
 public:
  /// Registers a new name. Throws if the name exists or the table is frozen.
  int add(const std::string& name, VarKind kind);

  /// Returns the existing index or registers the name if the table is
  /// mutable; throws on unknown names when frozen.
  int intern(const std::string& name, VarKind kind);

  std::optional<int> find(const std::string& name) const;

  const std::string& name(int index) const { return entries_.at(index).name; }
  VarKind kind(int index) const { return entries_.at(index).kind; }
  int size() const { return static_cast<int>(entries_.size()); }

  void freeze() { frozen_ = true; }
  bool frozen() const { return frozen_; }

  /// Marks a variable as pinned/substituted away. Indices stay dense; a
  /// retired variable simply no longer appears in any live polynomial.
  void retire(int index) { entries_.at(index).retired = true; }
  bool retired(int index) const { return entries_.at(index).retired; }

 private:
  struct Entry {
    std::string name;
    VarKind kind;
    bool retired = false;
  };
  std::vector<Entry> entries_;
  std::unordered_map<std::string, int> index_;
  bool frozen_ = false;
};

using TablePtr = std::shared_ptr<VariableTable>;

inline TablePtr make_table() { return std::make_shared<VariableTable>(); }

}  // namespace causalg
