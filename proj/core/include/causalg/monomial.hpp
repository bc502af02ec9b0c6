#pragma once

#include <compare>
#include <cstdint>
#include <utility>
#include <vector>

namespace causalg {

/// Power product of variables. Exponents are stored sparsely, sorted by
/// variable index, and are always strictly positive.
class Monomial {
 public:
  using Factor = std::pair<int, unsigned>;  // (variable index, exponent > 0)

  Monomial() = default;
  static Monomial one() { return Monomial(); }
  static Monomial variable(int var, unsigned exp = 1);

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  unsigned degree() const;
  unsigned exponent(int var) const;
  bool contains(int var) const { return exponent(var) > 0; }

  Monomial operator*(const Monomial& other) const;
  bool divides(const Monomial& other) const;
  /// Requires divides(*this) on the argument's side: returns other / *this.
  Monomial divide_into(const Monomial& numerator) const;
  static Monomial lcm(const Monomial& a, const Monomial& b);
  bool coprime(const Monomial& other) const;

  /// Canonical order-independent comparison used as map key ordering.
  auto operator<=>(const Monomial& other) const = default;

 private:
  std::vector<Factor> factors_;
};

}  // namespace causalg
