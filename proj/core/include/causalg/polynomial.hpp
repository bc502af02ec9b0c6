#pragma once

#include <map>
#include <string>
#include <vector>

#include "causalg/monomial.hpp"
#include "causalg/monomial_order.hpp"
#include "causalg/rational.hpp"
#include "causalg/variable_table.hpp"

namespace causalg {

/// Exact multivariate polynomial over Rational. Terms are kept in a
/// canonical map with nonzero coefficients only; equality is structural.
/// Values are immutable in spirit: every operation returns a fresh object.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(TablePtr table) : table_(std::move(table)) {}

  static Polynomial zero(TablePtr table) { return Polynomial(std::move(table)); }
  static Polynomial constant(TablePtr table, const Rational& value);
  static Polynomial variable(TablePtr table, int var);
  static Polynomial term(TablePtr table, const Rational& coeff,
                         const Monomial& mono);

  const TablePtr& table() const { return table_; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  Rational coefficient(const Monomial& mono) const;
  bool is_constant() const;
  Rational constant_value() const;  // requires is_constant()

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator-() const;
  Polynomial scaled(const Rational& factor) const;
  Polynomial pow(unsigned exponent) const;

  Polynomial& operator+=(const Polynomial& other) { return *this = *this + other; }
  Polynomial& operator-=(const Polynomial& other) { return *this = *this - other; }
  Polynomial& operator*=(const Polynomial& other) { return *this = *this * other; }

  bool operator==(const Polynomial& other) const { return terms_ == other.terms_; }

  unsigned total_degree() const;
  int degree_in(int var) const;
  std::vector<int> support() const;  // sorted variable indices
  bool uses(int var) const;

  Monomial leading_monomial(const MonomialOrder& order) const;
  Rational leading_coefficient(const MonomialOrder& order) const;
  Polynomial monic(const MonomialOrder& order) const;

  /// Exact evaluation; throws Error on a missing assignment.
  Rational evaluate(const std::map<int, Rational>& point) const;

  /// Substitutes `replacement` for `var` (exponents expanded exactly).
  Polynomial substitute(int var, const Polynomial& replacement) const;

  /// Collects terms by the exponent of `var`: result[k] holds the
  /// coefficient polynomial of var^k (free of `var`).
  std::vector<Polynomial> coefficients_in(int var) const;

  /// Terms in descending order; round-trips through parse_polynomial.
  std::string to_string(const MonomialOrder& order) const;
  std::string to_string() const;  // default table lex order

  void add_term(const Monomial& mono, const Rational& coeff);  // builder

 private:
  void check_table(const Polynomial& other) const;
  TablePtr table_;
  std::map<Monomial, Rational> terms_;
};

}  // namespace causalg
