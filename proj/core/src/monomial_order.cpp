#include "causalg/monomial_order.hpp"

#include <algorithm>
#include <numeric>

#include "causalg/errors.hpp"

namespace causalg {

MonomialOrder::MonomialOrder(std::vector<int> priority)
    : priority_(std::move(priority)) {
  rank_.assign(priority_.size(), -1);
  for (std::size_t r = 0; r < priority_.size(); ++r) {
    int v = priority_[r];
    if (v < 0 || v >= static_cast<int>(priority_.size()) || rank_[v] != -1)
      throw Error("monomial order priority is not a permutation");
    rank_[v] = static_cast<int>(r);
  }
}

MonomialOrder MonomialOrder::lex(int variable_count) {
  std::vector<int> p(variable_count);
  std::iota(p.begin(), p.end(), 0);
  return MonomialOrder(std::move(p));
}

MonomialOrder MonomialOrder::elimination(int variable_count,
                                         const std::vector<int>& first) {
  std::vector<char> taken(variable_count, 0);
  std::vector<int> p;
  p.reserve(variable_count);
  for (int v : first) {
    if (v < 0 || v >= variable_count || taken[v])
      throw Error("bad elimination block");
    taken[v] = 1;
    p.push_back(v);
  }
  for (int v = 0; v < variable_count; ++v)
    if (!taken[v]) p.push_back(v);
  return MonomialOrder(std::move(p));
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  // Compare exponents variable by variable in priority order. Only the
  // variables actually present matter; collect their (rank, exp) pairs.
  thread_local std::vector<std::pair<int, unsigned>> ra, rb;
  ra.clear();
  rb.clear();
  for (const auto& [v, e] : a.factors()) ra.push_back({rank_.at(v), e});
  for (const auto& [v, e] : b.factors()) rb.push_back({rank_.at(v), e});
  std::sort(ra.begin(), ra.end());
  std::sort(rb.begin(), rb.end());
  std::size_t i = 0, j = 0;
  while (i < ra.size() || j < rb.size()) {
    if (j == rb.size()) return 1;   // a has a high-priority variable b lacks
    if (i == ra.size()) return -1;
    if (ra[i].first != rb[j].first)
      return ra[i].first < rb[j].first ? 1 : -1;
    if (ra[i].second != rb[j].second)
      return ra[i].second > rb[j].second ? 1 : -1;
    ++i;
    ++j;
  }
  return 0;
}

}  // namespace causalg
