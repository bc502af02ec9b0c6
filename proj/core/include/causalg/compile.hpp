#pragma once

#include "causalg/compiled_model.hpp"

namespace causalg {

/// Compiles a regular BN into its conditional parametrization. Blocks are
/// merged by parent configuration (context equalities realized by variable
/// identification), atoms are the factorization monomials, chains run over
/// the whole joint sample space in odometer order (last variable fastest).
CompiledModel compile_bn(const BNSpec& spec, long chain_cap = kDefaultChainCap);

/// One simplex block per non-leaf vertex, one atom per root-to-leaf path.
CompiledModel compile_tree(const TreeSpec& spec,
                           long chain_cap = kDefaultChainCap);

/// General partial-order circumstance model: one block per non-terminal
/// circumstance, one atom per maximal chain.
CompiledModel compile_poset(const HasseDiagram& spec,
                            long chain_cap = kDefaultChainCap);

/// Returns a submodel with the constraints appended. Equalities of the
/// form variable = 0 or variable = 1 are applied by substitution into the
/// atoms (chains whose atom vanishes are pruned and the variables retired);
/// other equalities and all inequalities are stored. Variables of kind
/// Auxiliary found in the constraints are registered with [0,1] bounds.
CompiledModel add_constraints(
    const CompiledModel& model, const std::vector<Polynomial>& eqs,
    const std::vector<std::pair<Polynomial, IneqRel>>& ineqs);

}  // namespace causalg
