#pragma once

#include "causalg/groebner.hpp"
#include "causalg/manipulate.hpp"
#include "causalg/sampling.hpp"

namespace causalg {

/// Named observables: what an experiment lets us measure, each a
/// polynomial in the primitive probabilities.
struct ManifestSpec {
  std::string name;
  std::vector<std::pair<std::string, Polynomial>> observables;
  std::vector<Polynomial> inequalities;  // observed n(pi) > 0

  static ManifestSpec merge(const std::vector<ManifestSpec>& parts);
};

/// A causal effect: a polynomial in the (post-manipulation) primitives.
struct EffectSpec {
  std::string name = "effect";
  Polynomial expression;
};

/// Two valid parameter points that agree on every observable but give
/// the effect different values: an exact non-identifiability certificate.
struct Witness {
  ParameterPoint first, second;
  Rational effect_first, effect_second;
};

/// The observation ideal plus the variable bookkeeping of its block
/// order: generators over (pi, aux, observables, effect variable).
struct ObservationIdeal {
  Ideal ideal;
  std::vector<int> eliminate;        // pi and auxiliary variables
  std::vector<int> observable_vars;  // one fresh variable per observable
  int effect_var = -1;
};

/// Registers fresh variables for the observables (and the effect when
/// given) and assembles generators: model equalities, sum-to-one,
/// b_y - m_y(pi), and eps - e(pi). Throws on a name collision.
ObservationIdeal build_observation_ideal(const CompiledModel& model,
                                         const ManifestSpec& manifest,
                                         const EffectSpec* effect);

struct IdentifyOptions {
  std::uint64_t step_limit = kDefaultStepLimit;
  long trials = 10'000;
  std::uint64_t seed = 0;
};

struct IdentificationResult {
  enum class Verdict { Identifiable, NonIdentifiable, Undetermined };
  Verdict verdict = Verdict::Undetermined;
  Polynomial relation;  // in eps and observables, degree >= 1 in eps
  bool solved = false;
  Polynomial numerator, denominator;  // eps = numerator / denominator
  std::string expression;             // rendered solved form
  std::optional<Witness> witness;
  std::string reason;
};

/// Eliminates the primitives from the observation ideal and scans the
/// result for a relation of positive degree in the effect variable;
/// solves it when linear. When no relation exists or the step budget is
/// exhausted, falls through to witness search; Undetermined only when
/// both routes are inconclusive.
IdentificationResult identify_effect(const CompiledModel& model,
                                     const ManipulationSpec& manipulation,
                                     const ManifestSpec& manifest,
                                     const EffectSpec& effect,
                                     const IdentifyOptions& options = {});

/// Randomized search for a non-identifiability certificate. First
/// perturbs simplex blocks disjoint from the manifest support, then
/// falls back to single-coordinate perturbation with per-observable
/// linear repair. Deterministic given the seed; absence of a witness
/// proves nothing.
std::optional<Witness> nonid_witness_search(const CompiledModel& model,
                                            const ManipulationSpec& manipulation,
                                            const ManifestSpec& manifest,
                                            const EffectSpec& effect,
                                            long trials, std::uint64_t seed);

struct FeasibilityResult {
  std::optional<ParameterPoint> point;
  long trials = 0;
  bool found() const { return point.has_value(); }
};

/// Rejection sampling over the simplex product, solving linearly for
/// auxiliary parameters where possible. A returned point is an exact
/// certificate; NoneFound is inconclusive.
FeasibilityResult feasible(const CompiledModel& model, long trials,
                           std::uint64_t seed);

/// Samples a parameter point satisfying the model's extra equality
/// constraints as well (by auxiliary solving); nullopt when rejected.
std::optional<ParameterPoint> sample_constrained_point(
    const CompiledModel& model, std::mt19937_64& rng);

}  // namespace causalg
