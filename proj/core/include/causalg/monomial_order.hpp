#pragma once

#include <vector>

#include "causalg/monomial.hpp"

namespace causalg {

/// Lexicographic monomial order given by a priority permutation of the
/// variable indices. priority[0] is the most significant variable. An
/// elimination (block) order lists the eliminated variables first.
class MonomialOrder {
 public:
  MonomialOrder() = default;
  explicit MonomialOrder(std::vector<int> priority);

  /// Plain lex on indices 0 > 1 > ... > n-1.
  static MonomialOrder lex(int variable_count);
  /// Block lex: `first` (in the given sequence), then all remaining
  /// indices below `variable_count` in ascending index order.
  static MonomialOrder elimination(int variable_count,
                                   const std::vector<int>& first);

  const std::vector<int>& priority() const { return priority_; }
  int rank(int var) const { return rank_.at(var); }

  /// <0 if a < b, 0 if equal, >0 if a > b.
  int compare(const Monomial& a, const Monomial& b) const;
  bool less(const Monomial& a, const Monomial& b) const {
    return compare(a, b) < 0;
  }

  bool operator==(const MonomialOrder&) const = default;

 private:
  std::vector<int> priority_;
  std::vector<int> rank_;
};

}  // namespace causalg
