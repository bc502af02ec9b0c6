#include "causalg/manipulate.hpp"

#include <algorithm>

#include "causalg/groebner.hpp"
#include "causalg/sampling.hpp"

namespace causalg {

namespace {

/// BN variable behind a block, read off the block label ("X3|X1=1,X2=2").
int block_bn_variable(const BNSpec& spec, const std::string& label) {
  auto bar = label.find('|');
  return spec.index_of(bar == std::string::npos ? label
                                                : label.substr(0, bar));
}

/// Value of a BN edge variable, read off its name "pi(Name=value...".
int bn_var_value(const std::string& name) {
  auto eq = name.find('=');
  auto end = name.find_first_of("|)", eq + 1);
  return std::stoi(name.substr(eq + 1, end - eq - 1));
}

}  // namespace

std::map<int, Polynomial> expand_definitions(const CompiledModel& model,
                                             const ManipulationSpec& spec) {
  std::map<int, Polynomial> defs = spec.definitions;
  for (auto [var, value] : spec.do_values) {
    if (!model.bn) throw Error("do-form manipulation needs a BN model");
    const auto& bnvar = model.bn->spec.variables.at(var);
    if (value < 1 || value > bnvar.levels)
      throw Error("do value " + std::to_string(value) + " out of range for '" +
                  bnvar.name + "'");
    bool touched = false;
    for (const auto& block : model.blocks) {
      if (block_bn_variable(model.bn->spec, block.label) != var) continue;
      touched = true;
      for (int v : block.vars) {
        Rational c = (bn_var_value(model.table->name(v)) == value)
                         ? Rational(1)
                         : Rational(0);
        defs.insert({v, Polynomial::constant(model.table, c)});
      }
    }
    if (!touched)
      throw Error("variable '" + bnvar.name +
                  "' has no free block left to manipulate");
  }
  return defs;
}

CompiledModel manipulate(const CompiledModel& model,
                         const ManipulationSpec& spec,
                         std::uint64_t check_seed, int check_samples) {
  std::map<int, Polynomial> defs = expand_definitions(model, spec);

  // Every manipulated edge must be a live block variable.
  std::vector<char> block_affected(model.blocks.size(), 0);
  for (const auto& [v, def] : defs) {
    int b = model.block_of(v);
    if (b < 0)
      throw Error("manipulated edge '" + model.table->name(v) +
                  "' is not in the model");
    block_affected[b] = 1;
  }

  auto substitute_defs = [&](Polynomial p) {
    for (const auto& [v, def] : defs)
      if (p.uses(v)) p = p.substitute(v, def);
    return p;
  };

  // Manipulated sum-to-one contract per affected block.
  auto rng = make_rng(check_seed);
  std::vector<ParameterPoint> samples;
  for (std::size_t b = 0; b < model.blocks.size(); ++b) {
    if (!block_affected[b]) continue;
    Polynomial sum(model.table);
    bool all_const = true;
    for (int v : model.blocks[b].vars) {
      sum += Polynomial::variable(model.table, v);
      auto it = defs.find(v);
      if (it != defs.end() && !it->second.is_constant()) all_const = false;
      if (it == defs.end()) all_const = false;
    }
    Polynomial manipulated = substitute_defs(sum);
    if (all_const) {
      if (!manipulated.is_constant() || manipulated.constant_value() != 1)
        throw Error("manipulated block '" + model.blocks[b].label +
                    "' does not sum to 1");
    } else {
      if (samples.empty())
        for (int s = 0; s < check_samples; ++s)
          samples.push_back(sample_parameter_point(model, rng));
      for (const auto& point : samples) {
        if (manipulated.evaluate(point.assignment) != 1)
          throw Error("manipulated block '" + model.blocks[b].label +
                      "' does not sum to 1 at a sample point");
        for (int v : model.blocks[b].vars) {
          auto it = defs.find(v);
          if (it != defs.end() &&
              it->second.evaluate(point.assignment) < 0)
            throw Error("manipulated edge '" + model.table->name(v) +
                        "' takes a negative value at a sample point");
        }
      }
    }
  }

  CompiledModel out = model;
  std::vector<Chain> kept_chains;
  std::vector<Polynomial> kept_atoms;
  std::vector<std::vector<int>> kept_assign, kept_factors;
  for (int i = 0; i < out.chain_count(); ++i) {
    Polynomial atom = substitute_defs(out.atoms[i]);
    if (atom.is_zero()) continue;
    kept_chains.push_back(out.chain_list[i]);
    kept_atoms.push_back(std::move(atom));
    if (out.bn) {
      kept_assign.push_back(out.bn->assignments[i]);
      auto factors = out.bn->factor_vars[i];
      for (auto& f : factors)
        if (f >= 0 && defs.count(f)) f = -1;
      kept_factors.push_back(std::move(factors));
    }
  }
  out.chain_list = std::move(kept_chains);
  out.atoms = std::move(kept_atoms);
  if (out.bn) {
    out.bn->assignments = std::move(kept_assign);
    out.bn->factor_vars = std::move(kept_factors);
    for (auto [var, value] : spec.do_values) out.bn->do_values[var] = value;
  }

  std::vector<SimplexBlock> kept_blocks;
  std::vector<Polynomial> kept_sums;
  for (std::size_t b = 0; b < out.blocks.size(); ++b) {
    if (!block_affected[b]) {
      kept_blocks.push_back(out.blocks[b]);
      kept_sums.push_back(out.sum_to_one[b]);
      continue;
    }
    SimplexBlock nb{out.blocks[b].label, {}};
    for (int v : out.blocks[b].vars)
      if (!defs.count(v)) nb.vars.push_back(v);
    if (!nb.vars.empty()) {
      kept_blocks.push_back(nb);
      kept_sums.push_back(substitute_defs(out.sum_to_one[b]));
    }
  }
  out.blocks = std::move(kept_blocks);
  out.sum_to_one = std::move(kept_sums);

  for (const auto& [v, def] : defs) {
    if (def.is_constant()) {
      out.table->retire(v);
      out.pinned[v] = def.constant_value();
    }
  }
  for (auto& eq : out.equalities) eq = substitute_defs(eq);
  for (auto& [p, rel] : out.inequalities) p = substitute_defs(p);
  return out;
}

bool premanipulation_marginal_check(const CompiledModel& model,
                                    const ManipulationSpec& spec) {
  if (!model.bn) throw Error("premanipulation check needs a BN model");
  if (spec.do_values.empty())
    throw Error("premanipulation check needs a do-form target");
  int first = spec.do_values[0].first;
  for (auto [var, value] : spec.do_values) first = std::min(first, var);
  if (first == 0) return true;
  std::vector<int> prefix(first);
  for (int i = 0; i < first; ++i) prefix[i] = i;

  auto before = marginal_polynomials(model, prefix);
  auto after = marginal_polynomials(manipulate(model, spec), prefix);

  // The sum-to-one polynomials have pairwise-distinct leading variables,
  // so they already form a Groebner basis under lex.
  auto order = MonomialOrder::lex(model.table->size());
  for (std::size_t i = 0; i < before.size(); ++i) {
    if (!normal_form(before[i] - after[i], model.sum_to_one, order).is_zero())
      return false;
  }
  return true;
}

}  // namespace causalg
