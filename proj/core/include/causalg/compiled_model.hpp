#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "causalg/model_spec.hpp"
#include "causalg/polynomial.hpp"

namespace causalg {

enum class IneqRel { Greater, GreaterEqual };  // poly > 0 or poly >= 0

/// One simplex block: the transition probabilities out of one
/// circumstance (or one parent configuration of a BN variable).
struct SimplexBlock {
  std::string label;
  std::vector<int> vars;  // active (unpinned) variable indices
};

/// BN bookkeeping carried by models compiled from a BNSpec: the value
/// assignment behind every chain and the primitive-probability variable
/// contributed by each BN variable to each chain.
struct BNStructure {
  BNSpec spec;
  std::vector<std::vector<int>> assignments;  // per chain, values 1..r_i
  std::vector<std::vector<int>> factor_vars;  // per chain, var per BN
                                              // variable, -1 once dropped
  std::vector<int> do_values;  // per BN variable: forced value or 0
};

/// The common semantic object all model classes compile into: primitive
/// probabilities on a product of simplices, atom polynomials p(lambda),
/// and constraint sets. Immutable after construction.
struct CompiledModel {
  TablePtr table;
  std::vector<SimplexBlock> blocks;
  std::vector<Chain> chain_list;
  std::vector<Polynomial> atoms;      // parallel to chain_list, nonzero
  std::vector<Polynomial> sum_to_one;  // per block: sum of vars - 1
  std::vector<int> auxiliary;          // extra symbols with [0,1] bounds
  std::vector<Polynomial> equalities;  // == 0
  std::vector<std::pair<Polynomial, IneqRel>> inequalities;
  std::map<int, Rational> pinned;      // retired variables and their values
  std::optional<BNStructure> bn;

  int chain_count() const { return static_cast<int>(chain_list.size()); }
  int find_chain(const std::string& label) const;
  /// Block index of a variable, or -1 for auxiliaries.
  int block_of(int var) const;
  /// Interior dimension: sum over blocks of (size - 1).
  int free_dimension() const;
  /// Chains whose atom involves a variable of the given block.
  std::vector<int> chains_through_block(int block) const;
  std::vector<int> chains_using_var(int var) const;
};

}  // namespace causalg
