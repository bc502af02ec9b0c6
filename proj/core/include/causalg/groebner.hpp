#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "causalg/polynomial.hpp"

namespace causalg {

inline constexpr std::uint64_t kDefaultStepLimit = 1'000'000;

struct Ideal {
  std::vector<Polynomial> generators;  // nonzero
  MonomialOrder order;
};

struct GroebnerBasis {
  std::vector<Polynomial> basis;
  MonomialOrder order;
  bool reduced = false;
};

struct DivisionResult {
  std::vector<Polynomial> quotients;
  Polynomial remainder;
};

/// Multivariate division. Always reduces by the first divisor (in list
/// order) whose leading term divides the current leading term; the
/// remainder has no term divisible by any divisor leading term and
/// f = sum quotients[i] * divisors[i] + remainder holds exactly.
DivisionResult divide(const Polynomial& f,
                      const std::vector<Polynomial>& divisors,
                      const MonomialOrder& order);

Polynomial normal_form(const Polynomial& f,
                       const std::vector<Polynomial>& divisors,
                       const MonomialOrder& order);

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g,
                        const MonomialOrder& order);

/// Buchberger's algorithm with the coprime and chain criteria and
/// normal-strategy pair selection (smallest lcm under the order). The
/// result is the reduced Groebner basis, sorted by descending leading
/// term, hence canonical for a fixed input. step_limit counts S-pair
/// reductions; exceeding it throws StepLimitExceeded.
GroebnerBasis buchberger(const Ideal& ideal,
                         std::uint64_t step_limit = kDefaultStepLimit);

/// Intersection of the ideal with the subring of the `keep` variables:
/// a Groebner basis under a lex order that places all other variables
/// first, filtered to polynomials supported on `keep` only.
Ideal elimination_ideal(const Ideal& ideal, const std::set<int>& keep,
                        std::uint64_t step_limit = kDefaultStepLimit);

}  // namespace causalg
