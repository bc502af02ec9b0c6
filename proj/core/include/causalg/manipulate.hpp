#pragma once

#include "causalg/calculus.hpp"

namespace causalg {

/// A manipulation: a set of transition edges whose probabilities are
/// replaced by polynomial definitions in the remaining primitives. The
/// BN do-form do(Xi = xi*) is shorthand for constant definitions (1 on
/// the kept edge of every Xi block, 0 on the siblings).
struct ManipulationSpec {
  std::vector<std::pair<int, int>> do_values;  // (BN variable index, value)
  std::map<int, Polynomial> definitions;       // edge variable -> pihat
};

/// The full edge-to-definition map with the do-form expanded into its
/// constant definitions. Throws on invalid targets.
std::map<int, Polynomial> expand_definitions(const CompiledModel& model,
                                             const ManipulationSpec& spec);

/// Returns the manipulated model: definitions are substituted into the
/// atoms, vanished chains are pruned, manipulated edges leave their
/// blocks. The manipulated sum-to-one contract is verified symbolically
/// for constant definitions and at `check_samples` exact sample points
/// otherwise.
CompiledModel manipulate(const CompiledModel& model,
                         const ManipulationSpec& spec,
                         std::uint64_t check_seed = 0, int check_samples = 8);

/// True iff the marginal mass polynomials over the variables preceding
/// the earliest do-target are structurally unchanged (modulo sum-to-one)
/// by the manipulation. Needs a BN model and at least one do-form entry.
bool premanipulation_marginal_check(const CompiledModel& model,
                                    const ManipulationSpec& spec);

}  // namespace causalg
