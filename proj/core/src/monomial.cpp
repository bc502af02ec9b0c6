#include "causalg/monomial.hpp"

#include <algorithm>
#include <cassert>

namespace causalg {

Monomial Monomial::variable(int var, unsigned exp) {
  Monomial m;
  if (exp > 0) m.factors_.push_back({var, exp});
  return m;
}

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (const auto& [v, e] : factors_) d += e;
  return d;
}

unsigned Monomial::exponent(int var) const {
  auto it = std::lower_bound(
      factors_.begin(), factors_.end(), var,
      [](const Factor& f, int v) { return f.first < v; });
  return (it != factors_.end() && it->first == var) ? it->second : 0u;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  out.factors_.reserve(factors_.size() + other.factors_.size());
  auto a = factors_.begin(), b = other.factors_.begin();
  while (a != factors_.end() || b != other.factors_.end()) {
    if (b == other.factors_.end() ||
        (a != factors_.end() && a->first < b->first)) {
      out.factors_.push_back(*a++);
    } else if (a == factors_.end() || b->first < a->first) {
      out.factors_.push_back(*b++);
    } else {
      out.factors_.push_back({a->first, a->second + b->second});
      ++a;
      ++b;
    }
  }
  return out;
}

bool Monomial::divides(const Monomial& other) const {
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end()) {
    while (b != other.factors_.end() && b->first < a->first) ++b;
    if (b == other.factors_.end() || b->first != a->first ||
        b->second < a->second)
      return false;
    ++a;
  }
  return true;
}

Monomial Monomial::divide_into(const Monomial& numerator) const {
  assert(divides(numerator));
  Monomial out;
  auto a = factors_.begin();
  for (const auto& f : numerator.factors_) {
    unsigned sub = 0;
    if (a != factors_.end() && a->first == f.first) {
      sub = a->second;
      ++a;
    }
    if (f.second > sub) out.factors_.push_back({f.first, f.second - sub});
  }
  return out;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
  Monomial out;
  auto i = a.factors_.begin(), j = b.factors_.begin();
  while (i != a.factors_.end() || j != b.factors_.end()) {
    if (j == b.factors_.end() ||
        (i != a.factors_.end() && i->first < j->first)) {
      out.factors_.push_back(*i++);
    } else if (i == a.factors_.end() || j->first < i->first) {
      out.factors_.push_back(*j++);
    } else {
      out.factors_.push_back({i->first, std::max(i->second, j->second)});
      ++i;
      ++j;
    }
  }
  return out;
}

bool Monomial::coprime(const Monomial& other) const {
  auto a = factors_.begin(), b = other.factors_.begin();
  while (a != factors_.end() && b != other.factors_.end()) {
    if (a->first == b->first) return false;
    if (a->first < b->first)
      ++a;
    else
      ++b;
  }
  return true;
}

}  // namespace causalg
