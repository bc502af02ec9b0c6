#include "causalg/identify.hpp"

#include <algorithm>
#include <set>

namespace causalg {

ManifestSpec ManifestSpec::merge(const std::vector<ManifestSpec>& parts) {
  ManifestSpec out;
  for (const auto& part : parts) {
    if (!out.name.empty()) out.name += "+";
    out.name += part.name;
    for (const auto& [name, poly] : part.observables) {
      bool dup = false;
      for (const auto& [have, have_poly] : out.observables)
        if (have == name) {
          if (!(have_poly == poly))
            throw Error("observable '" + name +
                        "' defined twice with different polynomials");
          dup = true;
        }
      if (!dup) out.observables.push_back({name, poly});
    }
    out.inequalities.insert(out.inequalities.end(), part.inequalities.begin(),
                            part.inequalities.end());
  }
  return out;
}

ObservationIdeal build_observation_ideal(const CompiledModel& model,
                                         const ManifestSpec& manifest,
                                         const EffectSpec* effect) {
  ObservationIdeal out;
  const auto& table = model.table;

  auto fresh = [&](const std::string& name, VarKind kind) {
    if (auto existing = table->find(name)) {
      if (table->kind(*existing) != kind)
        throw Error("name collision: '" + name +
                    "' is already a model variable");
      return *existing;
    }
    return table->add(name, kind);
  };
  for (const auto& [name, poly] : manifest.observables)
    out.observable_vars.push_back(fresh(name, VarKind::Manifest));
  if (effect) out.effect_var = fresh(effect->name, VarKind::Dummy);

  auto& gens = out.ideal.generators;
  for (const auto& eq : model.equalities)
    if (!eq.is_zero()) gens.push_back(eq);
  for (const auto& sum : model.sum_to_one) gens.push_back(sum);
  for (std::size_t i = 0; i < manifest.observables.size(); ++i)
    gens.push_back(Polynomial::variable(table, out.observable_vars[i]) -
                   manifest.observables[i].second);
  if (effect)
    gens.push_back(Polynomial::variable(table, out.effect_var) -
                   effect->expression);

  std::set<int> keep(out.observable_vars.begin(), out.observable_vars.end());
  if (effect) keep.insert(out.effect_var);
  std::set<int> elim;
  for (const auto& g : gens)
    for (int v : g.support())
      if (!keep.count(v)) elim.insert(v);
  out.eliminate.assign(elim.begin(), elim.end());
  out.ideal.order =
      MonomialOrder::elimination(table->size(), out.eliminate);
  return out;
}

namespace {

/// Substitution elimination: a generator c1*x + c0 with c1 a nonzero
/// constant and x an eliminated variable determines x = -c0/c1; the
/// rewrite is an isomorphism on the quotient, so it preserves the
/// elimination ideal over the kept variables. Shrinks the Groebner
/// problem drastically (sum-to-one slacks, directly observed primitives).
void presubstitute(std::vector<Polynomial>& gens, std::set<int>& eliminate) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < gens.size() && !changed; ++i) {
      auto support = gens[i].support();
      for (auto it = support.rbegin(); it != support.rend(); ++it) {
        int x = *it;
        if (!eliminate.count(x) || gens[i].degree_in(x) != 1) continue;
        auto coeffs = gens[i].coefficients_in(x);
        if (!coeffs[1].is_constant()) continue;
        Polynomial replacement =
            coeffs[0].scaled(Rational(-1) / coeffs[1].constant_value());
        for (std::size_t j = 0; j < gens.size(); ++j)
          if (j != i && gens[j].uses(x))
            gens[j] = gens[j].substitute(x, replacement);
        gens.erase(gens.begin() + static_cast<long>(i));
        eliminate.erase(x);
        changed = true;
        break;
      }
    }
  }
  gens.erase(std::remove_if(gens.begin(), gens.end(),
                            [](const Polynomial& g) { return g.is_zero(); }),
             gens.end());
}

Rational evaluate_or_zero(const Polynomial& p,
                          const std::map<int, Rational>& point) {
  return p.is_zero() ? Rational(0) : p.evaluate(point);
}

bool satisfies_constraints(const CompiledModel& model,
                           const ManifestSpec& manifest,
                           const ParameterPoint& point) {
  for (const auto& eq : model.equalities)
    if (evaluate_or_zero(eq, point.assignment) != 0) return false;
  for (const auto& [p, rel] : model.inequalities) {
    Rational v = evaluate_or_zero(p, point.assignment);
    if (rel == IneqRel::Greater ? !(v > 0) : !(v >= 0)) return false;
  }
  for (const auto& p : manifest.inequalities)
    if (!(evaluate_or_zero(p, point.assignment) > 0)) return false;
  return true;
}

bool valid_point(const CompiledModel& model, const ManifestSpec& manifest,
                 const ParameterPoint& point) {
  try {
    point.validate(model);
  } catch (const Error&) {
    return false;
  }
  return satisfies_constraints(model, manifest, point);
}

std::optional<Witness> check_witness(const CompiledModel& model,
                                     const ManifestSpec& manifest,
                                     const Polynomial& effect,
                                     const ParameterPoint& a,
                                     const ParameterPoint& b) {
  if (!valid_point(model, manifest, a) || !valid_point(model, manifest, b))
    return std::nullopt;
  for (const auto& [name, poly] : manifest.observables)
    if (poly.evaluate(a.assignment) != poly.evaluate(b.assignment))
      return std::nullopt;
  Rational ea = effect.evaluate(a.assignment);
  Rational eb = effect.evaluate(b.assignment);
  if (ea == eb) return std::nullopt;
  return Witness{a, b, ea, eb};
}

/// Perturbs one effect coordinate, then repairs each observable by
/// re-solving for a designated variable (all manifest polynomials are
/// multilinear in any single variable) and restores the block sums via
/// slack coordinates, iterating to an exact fixpoint.
std::optional<Witness> repair_witness(const CompiledModel& model,
                                      const ManifestSpec& manifest,
                                      const Polynomial& effect,
                                      const ParameterPoint& base, int v,
                                      const Rational& shrink) {
  auto point = base.assignment;
  Rational old = point.at(v);
  point[v] = old == 0 ? shrink : old * shrink;
  if (point[v] == old) return std::nullopt;

  std::vector<Rational> targets;
  for (const auto& [name, poly] : manifest.observables)
    targets.push_back(poly.evaluate(base.assignment));

  // A variable is directly observed when some manifest equals it.
  std::set<int> observed;
  for (const auto& [name, poly] : manifest.observables) {
    auto s = poly.support();
    if (s.size() == 1 && poly.term_count() == 1 &&
        poly.total_degree() == 1)
      observed.insert(s[0]);
  }
  std::set<int> taken{v};
  std::vector<int> designated(manifest.observables.size(), -1);
  for (std::size_t i = 0; i < manifest.observables.size(); ++i) {
    int best = -1;
    bool best_observed = true;
    for (int w : manifest.observables[i].second.support()) {
      if (taken.count(w) || model.block_of(w) < 0) continue;
      bool is_observed = observed.count(w) > 0;
      if (best == -1 || (best_observed && !is_observed) ||
          (best_observed == is_observed && w > best)) {
        best = w;
        best_observed = is_observed;
      }
    }
    if (best != -1) {
      designated[i] = best;
      taken.insert(best);
    }
  }
  std::vector<int> slack(model.blocks.size(), -1);
  for (std::size_t b = 0; b < model.blocks.size(); ++b) {
    for (int w : model.blocks[b].vars)
      if (!taken.count(w) && (slack[b] == -1 || w > slack[b])) slack[b] = w;
  }

  for (int round = 0; round < 60; ++round) {
    bool changed = false;
    for (std::size_t i = 0; i < manifest.observables.size(); ++i) {
      if (designated[i] < 0) continue;
      const auto& poly = manifest.observables[i].second;
      if (poly.evaluate(point) == targets[i]) continue;
      auto coeffs = poly.coefficients_in(designated[i]);
      Rational c1 = coeffs[1].is_zero() ? Rational(0)
                                        : coeffs[1].evaluate(point);
      if (c1 == 0) return std::nullopt;
      Rational c0 = evaluate_or_zero(coeffs[0], point);
      point[designated[i]] = (targets[i] - c0) / c1;
      changed = true;
    }
    for (std::size_t b = 0; b < model.blocks.size(); ++b) {
      if (slack[b] < 0) continue;
      Rational rest(0);
      for (int w : model.blocks[b].vars)
        if (w != slack[b]) rest += point.at(w);
      if (point[slack[b]] != Rational(1) - rest) {
        point[slack[b]] = Rational(1) - rest;
        changed = true;
      }
    }
    if (!changed) break;
  }
  return check_witness(model, manifest, effect, base,
                       ParameterPoint{point});
}

}  // namespace

std::optional<ParameterPoint> sample_constrained_point(
    const CompiledModel& model, std::mt19937_64& rng) {
  auto point = sample_parameter_point(model, rng);
  if (model.equalities.empty()) return point;

  // Triangular repair: solve each violated equality linearly for some
  // variable (auxiliaries first), fixing the block sum through a slack
  // coordinate when a primitive moves.
  for (std::size_t pass = 0; pass <= model.equalities.size(); ++pass) {
    bool moved = false;
    for (const auto& eq : model.equalities) {
      if (eq.evaluate(point.assignment) == 0) continue;
      auto support = eq.support();
      std::stable_sort(support.begin(), support.end(), [&](int a, int b) {
        bool aa = model.table->kind(a) == VarKind::Auxiliary;
        bool bb = model.table->kind(b) == VarKind::Auxiliary;
        if (aa != bb) return aa;
        return a > b;
      });
      bool fixed = false;
      for (int x : support) {
        if (eq.degree_in(x) != 1) continue;
        auto coeffs = eq.coefficients_in(x);
        Rational c1 = coeffs[1].is_zero()
                          ? Rational(0)
                          : coeffs[1].evaluate(point.assignment);
        if (c1 == 0) continue;
        Rational value =
            -evaluate_or_zero(coeffs[0], point.assignment) / c1;
        if (value < 0 || value > 1) continue;
        int block = model.block_of(x);
        if (block >= 0) {
          int slack = -1;
          Rational rest(0);
          for (int w : model.blocks[block].vars) {
            if (w == x) continue;
            if (slack == -1 || w > slack) slack = w;
          }
          if (slack == -1) continue;
          for (int w : model.blocks[block].vars)
            if (w != x && w != slack) rest += point.assignment.at(w);
          Rational slack_value = Rational(1) - rest - value;
          if (slack_value < 0 || slack_value > 1) continue;
          point.assignment[x] = value;
          point.assignment[slack] = slack_value;
        } else {
          point.assignment[x] = value;
        }
        fixed = moved = true;
        break;
      }
      if (!fixed) return std::nullopt;
    }
    if (!moved) break;
  }

  for (const auto& eq : model.equalities)
    if (eq.evaluate(point.assignment) != 0) return std::nullopt;
  try {
    point.validate(model);
  } catch (const Error&) {
    return std::nullopt;
  }
  return point;
}

FeasibilityResult feasible(const CompiledModel& model, long trials,
                           std::uint64_t seed) {
  auto rng = make_rng(seed);
  for (long t = 1; t <= trials; ++t) {
    auto point = sample_constrained_point(model, rng);
    if (!point) continue;
    bool ok = true;
    for (const auto& [p, rel] : model.inequalities) {
      Rational v = evaluate_or_zero(p, point->assignment);
      if (rel == IneqRel::Greater ? !(v > 0) : !(v >= 0)) ok = false;
    }
    if (ok) return FeasibilityResult{std::move(point), t};
  }
  return FeasibilityResult{std::nullopt, trials};
}

std::optional<Witness> nonid_witness_search(const CompiledModel& model,
                                            const ManipulationSpec& manipulation,
                                            const ManifestSpec& manifest,
                                            const EffectSpec& effect,
                                            long trials, std::uint64_t seed) {
  Polynomial e = effect.expression;
  if (!manipulation.do_values.empty() || !manipulation.definitions.empty())
    for (const auto& [var, def] : expand_definitions(model, manipulation))
      if (e.uses(var)) e = e.substitute(var, def);

  // Blocks no observable or constraint touches are free to perturb.
  std::set<int> protected_vars;
  for (const auto& [name, poly] : manifest.observables)
    for (int v : poly.support()) protected_vars.insert(v);
  for (const auto& eq : model.equalities)
    for (int v : eq.support()) protected_vars.insert(v);
  std::vector<int> free_blocks;
  bool free_moves_effect = false;
  for (std::size_t b = 0; b < model.blocks.size(); ++b) {
    bool touched = false, in_effect = false;
    for (int v : model.blocks[b].vars) {
      if (protected_vars.count(v)) touched = true;
      if (e.uses(v)) in_effect = true;
    }
    if (!touched) {
      free_blocks.push_back(static_cast<int>(b));
      if (in_effect) free_moves_effect = true;
    }
  }

  std::vector<int> effect_vars;
  for (int v : e.support())
    if (model.block_of(v) >= 0) effect_vars.push_back(v);
  if (effect_vars.empty()) return std::nullopt;

  auto rng = make_rng(seed);
  std::uniform_int_distribution<long> draw(1, (1 << 15));
  for (long t = 0; t < trials; ++t) {
    auto base = sample_constrained_point(model, rng);
    if (!base) continue;

    if (free_moves_effect) {
      auto other = *base;
      std::uniform_int_distribution<long> weight(1, (1 << 16) - 1);
      for (int b : free_blocks) {
        std::vector<long> raw;
        long total = 0;
        for (std::size_t i = 0; i < model.blocks[b].vars.size(); ++i) {
          raw.push_back(weight(rng));
          total += raw.back();
        }
        for (std::size_t i = 0; i < model.blocks[b].vars.size(); ++i)
          other.assignment[model.blocks[b].vars[i]] = rational(raw[i], total);
      }
      if (auto w = check_witness(model, manifest, e, *base, other)) return w;
    }

    int v = effect_vars[static_cast<std::size_t>(t) % effect_vars.size()];
    Rational shrink = rational(draw(rng), 1 << 16);  // in (0, 1/2]
    if (auto w = repair_witness(model, manifest, e, *base, v, shrink))
      return w;
  }
  return std::nullopt;
}

namespace {

std::string render_solved(const TablePtr& table, const std::string& name,
                          const Polynomial& numerator,
                          const Polynomial& denominator) {
  auto order = MonomialOrder::lex(table->size());
  std::string out = name + " = (" + numerator.to_string(order) + ")";
  if (!(denominator.is_constant() &&
        denominator.constant_value() == Rational(1)))
    out += " / (" + denominator.to_string(order) + ")";
  return out;
}

}  // namespace

IdentificationResult identify_effect(const CompiledModel& model,
                                     const ManipulationSpec& manipulation,
                                     const ManifestSpec& manifest,
                                     const EffectSpec& effect,
                                     const IdentifyOptions& options) {
  EffectSpec substituted = effect;
  if (!manipulation.do_values.empty() || !manipulation.definitions.empty())
    for (const auto& [var, def] : expand_definitions(model, manipulation))
      if (substituted.expression.uses(var))
        substituted.expression = substituted.expression.substitute(var, def);

  // Cheap witness pre-pass. Non-identifiable queries tend to produce a
  // certificate within a few trials, orders of magnitude faster than the
  // elimination; first conclusive answer wins.
  if (auto w = nonid_witness_search(model, manipulation, manifest, effect,
                                    std::min<long>(options.trials, 1000),
                                    options.seed)) {
    IdentificationResult early;
    early.verdict = IdentificationResult::Verdict::NonIdentifiable;
    early.witness = w;
    return early;
  }

  auto obs = build_observation_ideal(model, manifest, &substituted);
  std::set<int> eliminate(obs.eliminate.begin(), obs.eliminate.end());
  auto gens = obs.ideal.generators;
  presubstitute(gens, eliminate);

  std::set<int> keep(obs.observable_vars.begin(), obs.observable_vars.end());
  keep.insert(obs.effect_var);
  for (const auto& g : gens)
    for (int v : g.support())
      if (!keep.count(v) && !eliminate.count(v)) eliminate.insert(v);

  IdentificationResult result;
  bool budget_exhausted = false;
  // Block order, fully explicit so the cost does not depend on what else
  // has been interned on the shared table: eliminated variables first in
  // descending index (late primitives reduce away cheapest), then the
  // observables in manifest order, the effect variable last.
  std::vector<int> priority(eliminate.rbegin(), eliminate.rend());
  for (int v : obs.observable_vars) priority.push_back(v);
  priority.push_back(obs.effect_var);
  Ideal pruned{gens,
               MonomialOrder::elimination(model.table->size(), priority)};
  try {
    GroebnerBasis gb = buchberger(pruned, options.step_limit);
    Ideal relations;
    for (const auto& g : gb.basis) {
      bool inside = true;
      for (int v : g.support())
        if (!keep.count(v)) { inside = false; break; }
      if (inside) relations.generators.push_back(g);
    }
    const Polynomial* best = nullptr;
    for (const auto& g : relations.generators) {
      int d = g.degree_in(obs.effect_var);
      if (d < 1) continue;
      if (!best || d < best->degree_in(obs.effect_var)) best = &g;
    }
    if (best) {
      result.verdict = IdentificationResult::Verdict::Identifiable;
      result.relation = *best;
      if (best->degree_in(obs.effect_var) == 1) {
        auto coeffs = best->coefficients_in(obs.effect_var);
        result.numerator = -coeffs[0];
        result.denominator = coeffs[1];
        auto lex = MonomialOrder::lex(model.table->size());
        if (result.denominator.coefficient(
                result.denominator.leading_monomial(lex)) < 0) {
          result.numerator = -result.numerator;
          result.denominator = -result.denominator;
        }
        result.solved = true;
        result.expression = render_solved(model.table, effect.name,
                                          result.numerator,
                                          result.denominator);
      }
      // Soundness cross-check at random valid points; a failure here is
      // an internal inconsistency, not a query outcome.
      auto rng = make_rng(options.seed);
      int checked = 0;
      for (int attempt = 0; attempt < 400 && checked < 100; ++attempt) {
        auto point = sample_constrained_point(model, rng);
        if (!point) continue;
        auto extended = point->assignment;
        for (std::size_t i = 0; i < manifest.observables.size(); ++i)
          extended[obs.observable_vars[i]] =
              manifest.observables[i].second.evaluate(point->assignment);
        Rational e_val = substituted.expression.evaluate(point->assignment);
        extended[obs.effect_var] = e_val;
        if (result.relation.evaluate(extended) != 0)
          throw Error("internal: identifiable relation fails at a sample "
                      "point");
        if (result.solved) {
          Rational den = evaluate_or_zero(result.denominator, extended);
          if (den != 0 &&
              e_val != evaluate_or_zero(result.numerator, extended) / den)
            throw Error("internal: solved expression disagrees with the "
                        "effect at a sample point");
        }
        ++checked;
      }
      // Guard: a witness would contradict the verdict outright.
      if (auto w = nonid_witness_search(model, manipulation, manifest, effect,
                                        std::min<long>(options.trials, 50),
                                        options.seed + 1))
        throw Error("internal: witness found for an identifiable effect");
      return result;
    }
  } catch (const StepLimitExceeded& e) {
    budget_exhausted = true;
    result.reason = e.what();
  }

  if (auto w = nonid_witness_search(model, manipulation, manifest, effect,
                                    options.trials, options.seed)) {
    result.verdict = IdentificationResult::Verdict::NonIdentifiable;
    result.witness = w;
    result.reason.clear();
    return result;
  }
  result.verdict = IdentificationResult::Verdict::Undetermined;
  if (budget_exhausted)
    result.reason += "; witness search found no certificate";
  else
    result.reason =
        "elimination ideal contains no relation involving the effect; "
        "witness search found no certificate";
  return result;
}

}  // namespace causalg
