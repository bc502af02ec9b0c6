#include "causalg/polynomial.hpp"

#include <algorithm>

#include "causalg/errors.hpp"

namespace causalg {

Polynomial Polynomial::constant(TablePtr table, const Rational& value) {
  Polynomial p(std::move(table));
  p.add_term(Monomial::one(), value);
  return p;
}

Polynomial Polynomial::variable(TablePtr table, int var) {
  Polynomial p(std::move(table));
  p.add_term(Monomial::variable(var), Rational(1));
  return p;
}

Polynomial Polynomial::term(TablePtr table, const Rational& coeff,
                            const Monomial& mono) {
  Polynomial p(std::move(table));
  p.add_term(mono, coeff);
  return p;
}

Rational Polynomial::coefficient(const Monomial& mono) const {
  auto it = terms_.find(mono);
  return it == terms_.end() ? Rational(0) : it->second;
}

bool Polynomial::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Polynomial::constant_value() const {
  if (terms_.empty()) return Rational(0);
  return terms_.begin()->second;
}

void Polynomial::check_table(const Polynomial& other) const {
  if (table_ && other.table_ && table_ != other.table_) throw MixedTables();
}

void Polynomial::add_term(const Monomial& mono, const Rational& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.emplace(mono, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  check_table(other);
  Polynomial out = *this;
  if (!out.table_) out.table_ = other.table_;
  for (const auto& [m, c] : other.terms_) out.add_term(m, c);
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  check_table(other);
  Polynomial out = *this;
  if (!out.table_) out.table_ = other.table_;
  for (const auto& [m, c] : other.terms_) out.add_term(m, -c);
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out(table_);
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

Polynomial Polynomial::scaled(const Rational& factor) const {
  Polynomial out(table_);
  if (factor == 0) return out;
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, c * factor);
  return out;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  check_table(other);
  Polynomial out(table_ ? table_ : other.table_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : other.terms_) out.add_term(ma * mb, ca * cb);
  return out;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial out = Polynomial::constant(table_, Rational(1));
  Polynomial base = *this;
  while (exponent) {
    if (exponent & 1u) out = out * base;
    exponent >>= 1u;
    if (exponent) base = base * base;
  }
  return out;
}

unsigned Polynomial::total_degree() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

int Polynomial::degree_in(int var) const {
  int d = 0;
  for (const auto& [m, c] : terms_)
    d = std::max(d, static_cast<int>(m.exponent(var)));
  return d;
}

std::vector<int> Polynomial::support() const {
  std::vector<int> vars;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m.factors()) vars.push_back(v);
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

bool Polynomial::uses(int var) const {
  for (const auto& [m, c] : terms_)
    if (m.contains(var)) return true;
  return false;
}

Monomial Polynomial::leading_monomial(const MonomialOrder& order) const {
  if (terms_.empty()) throw Error("leading monomial of zero polynomial");
  auto best = terms_.begin();
  for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
    if (order.less(best->first, it->first)) best = it;
  return best->first;
}

Rational Polynomial::leading_coefficient(const MonomialOrder& order) const {
  return terms_.at(leading_monomial(order));
}

Polynomial Polynomial::monic(const MonomialOrder& order) const {
  if (is_zero()) return *this;
  Rational lc = leading_coefficient(order);
  return scaled(Rational(1) / lc);
}

Rational Polynomial::evaluate(const std::map<int, Rational>& point) const {
  Rational total(0);
  for (const auto& [m, c] : terms_) {
    Rational value = c;
    for (const auto& [v, e] : m.factors()) {
      auto it = point.find(v);
      if (it == point.end())
        throw Error("missing assignment for variable '" +
                    (table_ ? table_->name(v) : std::to_string(v)) + "'");
      for (unsigned k = 0; k < e; ++k) value *= it->second;
    }
    total += value;
  }
  return total;
}

Polynomial Polynomial::substitute(int var, const Polynomial& replacement) const {
  Polynomial out(table_);
  for (const auto& [m, c] : terms_) {
    unsigned e = m.exponent(var);
    if (e == 0) {
      out.add_term(m, c);
      continue;
    }
    Monomial rest;
    for (const auto& [v, k] : m.factors())
      if (v != var) rest = rest * Monomial::variable(v, k);
    Polynomial piece = replacement.pow(e) * Polynomial::term(table_, c, rest);
    out += piece;
  }
  return out;
}

std::vector<Polynomial> Polynomial::coefficients_in(int var) const {
  std::vector<Polynomial> out(static_cast<std::size_t>(degree_in(var)) + 1,
                              Polynomial(table_));
  for (const auto& [m, c] : terms_) {
    unsigned e = m.exponent(var);
    Monomial rest;
    for (const auto& [v, k] : m.factors())
      if (v != var) rest = rest * Monomial::variable(v, k);
    out[e].add_term(rest, c);
  }
  return out;
}

std::string Polynomial::to_string() const {
  return to_string(MonomialOrder::lex(table_ ? table_->size() : 0));
}

std::string Polynomial::to_string(const MonomialOrder& order) const {
  if (terms_.empty()) return "0";
  std::vector<const std::pair<const Monomial, Rational>*> sorted;
  sorted.reserve(terms_.size());
  for (const auto& t : terms_) sorted.push_back(&t);
  std::sort(sorted.begin(), sorted.end(),
            [&](auto* a, auto* b) { return order.less(b->first, a->first); });
  std::string out;
  bool first = true;
  for (auto* t : sorted) {
    Rational c = t->second;
    if (first) {
      if (c < 0) {
        out += "-";
        c = -c;
      }
    } else {
      out += t->second < 0 ? " - " : " + ";
      if (c < 0) c = -c;
    }
    first = false;
    const Monomial& m = t->first;
    bool coeff_shown = (c != 1) || m.is_one();
    if (coeff_shown) out += causalg::to_string(c);
    bool need_star = coeff_shown;
    for (const auto& [v, e] : m.factors()) {
      if (need_star) out += "*";
      out += table_->name(v);
      if (e > 1) out += "^" + std::to_string(e);
      need_star = true;
    }
  }
  return out;
}

}  // namespace causalg
