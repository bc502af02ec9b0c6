#pragma once

#include "causalg/compiled_model.hpp"

namespace causalg {

/// Exact rational assignment to the primitive probabilities.
struct ParameterPoint {
  std::map<int, Rational> assignment;

  /// Throws Error unless every block variable is assigned a value in
  /// [0,1], every block sums to exactly 1, and any assigned auxiliary
  /// parameter lies in [0,1].
  void validate(const CompiledModel& model) const;
};

/// Probability per chain, parallel to the model's chain list.
struct JointPoint {
  std::vector<Rational> probabilities;

  /// Throws Error unless the size matches, entries are >= 0 and the
  /// entries sum to exactly 1.
  void validate(const CompiledModel& model) const;
};

/// A subset of chains: either value constraints on BN variables or an
/// explicit list of chain labels.
struct EventSpec {
  std::vector<std::pair<int, int>> values;  // (BN variable index, value)
  std::vector<std::string> atom_labels;

  /// Sorted chain indices; throws on an unknown label or an empty event.
  std::vector<int> resolve(const CompiledModel& model) const;
};

/// The multiplication rule: evaluates every atom polynomial at the point.
JointPoint mu_eval(const CompiledModel& model, const ParameterPoint& point);

/// Inverse via conditional probabilities: pi(v'|v) is the mass of the
/// chains using that edge over the mass of the chains reaching the block.
/// Throws BoundaryPoint when a block's mass is zero.
ParameterPoint invert_mu(const CompiledModel& model, const JointPoint& joint);

/// Marginal over a subset of BN variables, entries in odometer order
/// (last kept variable fastest).
struct Marginal {
  std::vector<int> keep;                    // BN variable indices
  std::vector<std::vector<int>> points;     // value tuple per entry
  std::vector<Rational> probabilities;

  std::string label(const BNSpec& spec, std::size_t entry) const;
};

Marginal marginalize(const CompiledModel& model, const JointPoint& joint,
                     const std::vector<int>& keep);

/// The marginal mass polynomials q(x_J) = sum of atoms, same entry order
/// as marginalize. Needs a BN-backed model.
std::vector<Polynomial> marginal_polynomials(const CompiledModel& model,
                                             const std::vector<int>& keep);
std::vector<std::vector<int>> marginal_points(const BNSpec& spec,
                                              const std::vector<int>& keep);

/// Mass per partition cell; throws on overlapping or non-covering cells.
std::vector<Rational> aggregate_events(const CompiledModel& model,
                                       const JointPoint& joint,
                                       const std::vector<EventSpec>& partition);

/// Simplicial projection onto the face spanned by the event's atoms.
/// Throws ZeroProbabilityEvent when the event has mass zero.
JointPoint condition(const CompiledModel& model, const JointPoint& joint,
                     const EventSpec& event);

}  // namespace causalg
