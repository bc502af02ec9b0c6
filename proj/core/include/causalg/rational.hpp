#pragma once

#include <gmpxx.h>

#include <string>

namespace causalg {

/// Exact arbitrary-precision rational. All coefficient arithmetic in the
/// library goes through this type; there is no floating point anywhere.
using Rational = mpq_class;

/// Parses "a" or "a/b" with optional leading sign. Throws on b == 0 or on
/// malformed input (decimal literals are rejected).
Rational rational_from_string(const std::string& text);

/// Canonical form "a" or "a/b" with b > 0 and gcd(|a|, b) = 1.
std::string to_string(const Rational& q);

inline Rational rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace causalg
