#pragma once

#include <random>

#include "causalg/calculus.hpp"

namespace causalg {

inline std::mt19937_64 make_rng(std::uint64_t seed) {
  return std::mt19937_64(seed);
}

/// Uniform-ish exact rational in [0,1] with denominator 2^16.
Rational random_unit_rational(std::mt19937_64& rng);

/// Random exact interior point: positive integer weights below 2^16
/// normalized per simplex block; auxiliary parameters drawn in [0,1].
/// Satisfies sum-to-one and box bounds, not the extra constraints.
ParameterPoint sample_parameter_point(const CompiledModel& model,
                                      std::mt19937_64& rng);

}  // namespace causalg
