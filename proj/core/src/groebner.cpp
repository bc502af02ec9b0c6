#include "causalg/groebner.hpp"

#include <algorithm>
#include <map>

#include "causalg/errors.hpp"

namespace causalg {

DivisionResult divide(const Polynomial& f,
                      const std::vector<Polynomial>& divisors,
                      const MonomialOrder& order) {
  DivisionResult result;
  result.quotients.assign(divisors.size(), Polynomial(f.table()));
  result.remainder = Polynomial(f.table());
  std::vector<Monomial> lead;
  std::vector<Rational> lead_coeff;
  lead.reserve(divisors.size());
  for (const auto& g : divisors) {
    if (g.is_zero()) throw Error("division by zero polynomial");
    lead.push_back(g.leading_monomial(order));
    lead_coeff.push_back(g.coefficient(lead.back()));
  }
  Polynomial work = f;
  while (!work.is_zero()) {
    Monomial lm = work.leading_monomial(order);
    Rational lc = work.coefficient(lm);
    bool reduced = false;
    for (std::size_t i = 0; i < divisors.size(); ++i) {
      if (!lead[i].divides(lm)) continue;
      Monomial q = lead[i].divide_into(lm);
      Rational qc = lc / lead_coeff[i];
      Polynomial qt = Polynomial::term(f.table(), qc, q);
      result.quotients[i] += qt;
      work -= qt * divisors[i];
      reduced = true;
      break;  // first divisor in list order, deterministic
    }
    if (!reduced) {
      Polynomial t = Polynomial::term(f.table(), lc, lm);
      result.remainder += t;
      work -= t;
    }
  }
  return result;
}

Polynomial normal_form(const Polynomial& f,
                       const std::vector<Polynomial>& divisors,
                       const MonomialOrder& order) {
  // Same loop as divide() without tracking quotients.
  if (divisors.empty()) return f;
  std::vector<Monomial> lead;
  std::vector<Rational> lead_coeff;
  lead.reserve(divisors.size());
  for (const auto& g : divisors) {
    if (g.is_zero()) throw Error("division by zero polynomial");
    lead.push_back(g.leading_monomial(order));
    lead_coeff.push_back(g.coefficient(lead.back()));
  }
  Polynomial remainder(f.table());
  Polynomial work = f;
  while (!work.is_zero()) {
    Monomial lm = work.leading_monomial(order);
    Rational lc = work.coefficient(lm);
    bool reduced = false;
    for (std::size_t i = 0; i < divisors.size(); ++i) {
      if (!lead[i].divides(lm)) continue;
      Monomial q = lead[i].divide_into(lm);
      work -= Polynomial::term(f.table(), lc / lead_coeff[i], q) * divisors[i];
      reduced = true;
      break;
    }
    if (!reduced) {
      Polynomial t = Polynomial::term(f.table(), lc, lm);
      remainder += t;
      work -= t;
    }
  }
  return remainder;
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g,
                        const MonomialOrder& order) {
  Monomial lf = f.leading_monomial(order);
  Monomial lg = g.leading_monomial(order);
  Monomial l = Monomial::lcm(lf, lg);
  Polynomial a =
      Polynomial::term(f.table(), Rational(1) / f.coefficient(lf),
                       lf.divide_into(l));
  Polynomial b =
      Polynomial::term(g.table(), Rational(1) / g.coefficient(lg),
                       lg.divide_into(l));
  return a * f - b * g;
}

namespace {

struct PairKey {
  Monomial lcm;
  std::size_t i, j;
};

struct PairLess {
  const MonomialOrder* order;
  bool operator()(const PairKey& a, const PairKey& b) const {
    int c = order->compare(a.lcm, b.lcm);
    if (c != 0) return c < 0;  // smallest lcm first (normal strategy)
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  }
};

}  // namespace

GroebnerBasis buchberger(const Ideal& ideal, std::uint64_t step_limit) {
  if (step_limit == 0) throw Error("step_limit must be positive");
  const MonomialOrder& order = ideal.order;
  std::vector<Polynomial> basis;
  for (const auto& g : ideal.generators)
    if (!g.is_zero()) basis.push_back(g);
  if (basis.empty())
    return GroebnerBasis{{}, order, true};

  std::vector<Monomial> lead;
  for (const auto& g : basis) lead.push_back(g.leading_monomial(order));

  std::multiset<PairKey, PairLess> pending{PairLess{&order}};
  auto push_pairs_for = [&](std::size_t k) {
    for (std::size_t i = 0; i < k; ++i)
      pending.insert({Monomial::lcm(lead[i], lead[k]), i, k});
  };
  for (std::size_t k = 1; k < basis.size(); ++k) push_pairs_for(k);

  std::uint64_t steps = 0;
  while (!pending.empty()) {
    PairKey pair = *pending.begin();
    pending.erase(pending.begin());

    // Buchberger's first criterion: coprime leading terms.
    if (lead[pair.i].coprime(lead[pair.j])) continue;

    // Chain criterion: skip if some other basis element divides the lcm
    // and both associated pairs are no longer pending.
    bool skip = false;
    for (std::size_t k = 0; k < basis.size() && !skip; ++k) {
      if (k == pair.i || k == pair.j) continue;
      if (!lead[k].divides(pair.lcm)) continue;
      auto still_pending = [&](std::size_t a, std::size_t b) {
        PairKey probe{Monomial::lcm(lead[a], lead[b]), std::min(a, b),
                      std::max(a, b)};
        auto [lo, hi] = pending.equal_range(probe);
        for (auto it = lo; it != hi; ++it)
          if (it->i == probe.i && it->j == probe.j) return true;
        return false;
      };
      if (!still_pending(pair.i, k) && !still_pending(pair.j, k)) skip = true;
    }
    if (skip) continue;

    if (++steps > step_limit) throw StepLimitExceeded(step_limit);
    Polynomial s = s_polynomial(basis[pair.i], basis[pair.j], order);
    Polynomial r = normal_form(s, basis, order);
    if (r.is_zero()) continue;
    basis.push_back(r);
    lead.push_back(r.leading_monomial(order));
    push_pairs_for(basis.size() - 1);
  }

  // Minimalize: drop elements whose leading term is divisible by the
  // leading term of another kept element.
  std::vector<Polynomial> minimal;
  std::vector<Monomial> minimal_lead;
  // Process in ascending leading-term order so redundant early elements
  // are discarded deterministically.
  std::vector<std::size_t> idx(basis.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    int c = order.compare(lead[a], lead[b]);
    if (c != 0) return c < 0;
    return a < b;
  });
  for (std::size_t i : idx) {
    bool redundant = false;
    for (const auto& lm : minimal_lead)
      if (lm.divides(lead[i])) {
        redundant = true;
        break;
      }
    if (!redundant) {
      minimal.push_back(basis[i]);
      minimal_lead.push_back(lead[i]);
    }
  }

  // Full reduction: tail-reduce every element against the others and make
  // it monic. The result is the canonical reduced Groebner basis.
  std::vector<Polynomial> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Polynomial> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    Polynomial r = normal_form(minimal[i], others, order);
    reduced.push_back(r.monic(order));
  }
  std::sort(reduced.begin(), reduced.end(),
            [&](const Polynomial& a, const Polynomial& b) {
              return order.less(b.leading_monomial(order),
                                a.leading_monomial(order));
            });
  return GroebnerBasis{std::move(reduced), order, true};
}

Ideal elimination_ideal(const Ideal& ideal, const std::set<int>& keep,
                        std::uint64_t step_limit) {
  int n = static_cast<int>(ideal.order.priority().size());
  // Highest-index variables are eliminated first: on compiled models the
  // late (deep) primitives reduce away cheapest, and lex elimination is
  // extremely sensitive to this choice.
  std::vector<int> eliminated;
  for (int v = n - 1; v >= 0; --v)
    if (!keep.count(v)) eliminated.push_back(v);
  MonomialOrder block = MonomialOrder::elimination(n, eliminated);
  GroebnerBasis gb = buchberger(Ideal{ideal.generators, block}, step_limit);
  Ideal out;
  out.order = ideal.order;
  for (const auto& g : gb.basis) {
    bool inside = true;
    for (int v : g.support())
      if (!keep.count(v)) {
        inside = false;
        break;
      }
    if (inside) out.generators.push_back(g);
  }
  return out;
}

}  // namespace causalg
