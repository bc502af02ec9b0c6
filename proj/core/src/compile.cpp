#include "causalg/compile.hpp"

#include <algorithm>
#include <functional>

namespace causalg {

int CompiledModel::find_chain(const std::string& label) const {
  for (int i = 0; i < chain_count(); ++i)
    if (chain_list[i].label == label) return i;
  throw Error("unknown chain '" + label + "'");
}

int CompiledModel::block_of(int var) const {
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (int v : blocks[b].vars)
      if (v == var) return static_cast<int>(b);
  return -1;
}

int CompiledModel::free_dimension() const {
  int dim = 0;
  for (const auto& b : blocks) dim += static_cast<int>(b.vars.size()) - 1;
  return dim;
}

std::vector<int> CompiledModel::chains_using_var(int var) const {
  std::vector<int> out;
  for (int i = 0; i < chain_count(); ++i)
    if (atoms[i].uses(var)) out.push_back(i);
  return out;
}

std::vector<int> CompiledModel::chains_through_block(int block) const {
  std::vector<int> out;
  for (int i = 0; i < chain_count(); ++i) {
    for (int v : blocks[block].vars)
      if (atoms[i].uses(v)) {
        out.push_back(i);
        break;
      }
  }
  return out;
}

namespace {

std::string bn_block_label(const BNSpec& spec, int var,
                           const std::vector<int>& config) {
  const auto& v = spec.variables[var];
  std::string label = v.name;
  if (!v.parents.empty()) {
    label += "|";
    for (std::size_t k = 0; k < v.parents.size(); ++k) {
      if (k) label += ",";
      label += spec.variables[v.parents[k]].name + "=" +
               std::to_string(config[k]);
    }
  }
  return label;
}

std::string bn_var_name(const BNSpec& spec, int var, int value,
                        const std::vector<int>& config) {
  const auto& v = spec.variables[var];
  std::string name = "pi(" + v.name + "=" + std::to_string(value);
  if (!v.parents.empty()) {
    name += "|";
    for (std::size_t k = 0; k < v.parents.size(); ++k) {
      if (k) name += ",";
      name += spec.variables[v.parents[k]].name + "=" +
              std::to_string(config[k]);
    }
  }
  return name + ")";
}

/// Odometer enumeration, last coordinate fastest, values 1-based.
bool next_config(std::vector<int>& config, const std::vector<int>& radices) {
  for (int i = static_cast<int>(config.size()) - 1; i >= 0; --i) {
    if (config[i] < radices[i]) {
      ++config[i];
      return true;
    }
    config[i] = 1;
  }
  return false;
}

}  // namespace

CompiledModel compile_bn(const BNSpec& spec, long chain_cap) {
  spec.validate();
  if (spec.joint_size() > chain_cap)
    throw Error("chain cap exceeded (" + std::to_string(chain_cap) + ")");

  CompiledModel model;
  model.table = make_table();
  model.bn = BNStructure{spec, {}, {}, std::vector<int>(spec.variables.size(), 0)};

  int n = static_cast<int>(spec.variables.size());
  // var_index[i] maps (parent config ordinal, value-1) to the table index.
  std::vector<std::vector<int>> var_index(n);
  std::vector<long> config_count(n, 1);
  for (int i = 0; i < n; ++i) {
    const auto& v = spec.variables[i];
    std::vector<int> radices;
    for (int p : v.parents) {
      radices.push_back(spec.variables[p].levels);
      config_count[i] *= spec.variables[p].levels;
    }
    std::vector<int> config(radices.size(), 1);
    long ordinal = 0;
    do {
      SimplexBlock block;
      block.label = bn_block_label(spec, i, config);
      for (int value = 1; value <= v.levels; ++value) {
        int idx = model.table->add(bn_var_name(spec, i, value, config),
                                   VarKind::Parameter);
        block.vars.push_back(idx);
        var_index[i].push_back(idx);
      }
      model.blocks.push_back(std::move(block));
      ++ordinal;
    } while (next_config(config, radices));
    (void)ordinal;
  }

  // Chains: the joint sample space in odometer order.
  std::vector<int> radices;
  for (const auto& v : spec.variables) radices.push_back(v.levels);
  std::vector<int> x(n, 1);
  do {
    Chain chain;
    chain.label = "p(";
    for (int i = 0; i < n; ++i) {
      if (i) chain.label += ",";
      chain.label += std::to_string(x[i]);
    }
    chain.label += ")";
    Polynomial atom = Polynomial::constant(model.table, Rational(1));
    std::vector<int> factors(n);
    for (int i = 0; i < n; ++i) {
      // ordinal of this chain's parent configuration, last parent fastest
      long ordinal = 0;
      for (int p : spec.variables[i].parents)
        ordinal = ordinal * spec.variables[p].levels + (x[p] - 1);
      int var = var_index[i][ordinal * spec.variables[i].levels + (x[i] - 1)];
      factors[i] = var;
      atom *= Polynomial::variable(model.table, var);
    }
    model.bn->assignments.push_back(x);
    model.bn->factor_vars.push_back(std::move(factors));
    model.chain_list.push_back(std::move(chain));
    model.atoms.push_back(std::move(atom));
  } while (next_config(x, radices));

  for (const auto& block : model.blocks) {
    Polynomial sum(model.table);
    for (int v : block.vars) sum += Polynomial::variable(model.table, v);
    model.sum_to_one.push_back(sum - Polynomial::constant(model.table, Rational(1)));
  }
  return model;
}

namespace {

CompiledModel compile_over_diagram(const HasseDiagram& diagram, long cap) {
  CompiledModel model;
  model.table = make_table();
  int n = static_cast<int>(diagram.vertices.size());

  // One variable per cover edge, grouped into one block per non-terminal
  // circumstance; edges keep their file order inside a block.
  std::vector<std::vector<std::pair<int, int>>> outgoing(n);  // (to, var)
  for (int v = 0; v < n; ++v) {
    bool has_out = false;
    for (auto [from, to] : diagram.edges)
      if (from == v) has_out = true;
    if (!has_out) continue;
    SimplexBlock block;
    block.label = diagram.vertices[v].id;
    for (auto [from, to] : diagram.edges) {
      if (from != v) continue;
      std::string name =
          "pi(" + diagram.vertices[to].id + "|" + diagram.vertices[v].id + ")";
      int idx = model.table->add(name, VarKind::Parameter);
      block.vars.push_back(idx);
      outgoing[v].push_back({to, idx});
    }
    model.blocks.push_back(std::move(block));
  }

  model.chain_list = chains(diagram, cap);
  for (const auto& chain : model.chain_list) {
    Polynomial atom = Polynomial::constant(model.table, Rational(1));
    for (std::size_t i = 0; i + 1 < chain.vertices.size(); ++i) {
      int var = -1;
      for (auto [to, idx] : outgoing[chain.vertices[i]])
        if (to == chain.vertices[i + 1]) var = idx;
      atom *= Polynomial::variable(model.table, var);
    }
    model.atoms.push_back(std::move(atom));
  }

  for (const auto& block : model.blocks) {
    Polynomial sum(model.table);
    for (int v : block.vars) sum += Polynomial::variable(model.table, v);
    model.sum_to_one.push_back(sum - Polynomial::constant(model.table, Rational(1)));
  }
  return model;
}

}  // namespace

CompiledModel compile_poset(const HasseDiagram& spec, long chain_cap) {
  spec.validate();
  return compile_over_diagram(spec, chain_cap);
}

CompiledModel compile_tree(const TreeSpec& spec, long chain_cap) {
  int root = spec.validate();
  (void)root;
  // A tree is the special case where the Hasse diagram is the tree itself
  // and root-to-leaf paths are the maximal chains. The generic chain
  // enumeration is still driven by an explicit path walk here so that the
  // tree/poset agreement property is a real cross-check.
  HasseDiagram d;
  std::vector<char> has_out(spec.vertices.size(), 0);
  for (auto [from, to] : spec.edges) has_out[from] = 1;
  for (std::size_t v = 0; v < spec.vertices.size(); ++v)
    d.vertices.push_back({spec.vertices[v], !has_out[v]});
  d.edges = spec.edges;

  CompiledModel model;
  model.table = make_table();
  int n = static_cast<int>(spec.vertices.size());
  std::vector<std::vector<std::pair<int, int>>> outgoing(n);
  for (int v = 0; v < n; ++v) {
    if (!has_out[v]) continue;
    SimplexBlock block;
    block.label = spec.vertices[v];
    for (auto [from, to] : spec.edges) {
      if (from != v) continue;
      int idx = model.table->add(
          "pi(" + spec.vertices[to] + "|" + spec.vertices[v] + ")",
          VarKind::Parameter);
      block.vars.push_back(idx);
      outgoing[v].push_back({to, idx});
    }
    model.blocks.push_back(std::move(block));
  }

  // Root-to-leaf walk, children in lexicographic-by-id order.
  for (auto& out : outgoing)
    std::sort(out.begin(), out.end(), [&](auto a, auto b) {
      return spec.vertices[a.first] < spec.vertices[b.first];
    });
  std::vector<int> path{root};
  Polynomial atom_acc = Polynomial::constant(model.table, Rational(1));
  std::function<void(int, Polynomial)> walk = [&](int v, Polynomial atom) {
    if (!has_out[v]) {
      if (static_cast<long>(model.chain_list.size()) >= chain_cap)
        throw Error("chain cap exceeded (" + std::to_string(chain_cap) + ")");
      Chain c;
      c.vertices = path;
      for (std::size_t i = 0; i < path.size(); ++i) {
        if (i) c.label += ">";
        c.label += spec.vertices[path[i]];
      }
      model.chain_list.push_back(std::move(c));
      model.atoms.push_back(std::move(atom));
      return;
    }
    for (auto [to, var] : outgoing[v]) {
      path.push_back(to);
      walk(to, atom * Polynomial::variable(model.table, var));
      path.pop_back();
    }
  };
  walk(root, atom_acc);

  for (const auto& block : model.blocks) {
    Polynomial sum(model.table);
    for (int v : block.vars) sum += Polynomial::variable(model.table, v);
    model.sum_to_one.push_back(sum - Polynomial::constant(model.table, Rational(1)));
  }
  return model;
}

namespace {

/// Matches a*v + b with a, b constants; returns (var, value = -b/a).
std::optional<std::pair<int, Rational>> linear_pin(const Polynomial& eq) {
  if (eq.is_zero() || eq.term_count() > 2) return std::nullopt;
  int var = -1;
  Rational a(0), b(0);
  for (const auto& [m, c] : eq.terms()) {
    if (m.is_one()) {
      b = c;
    } else if (m.factors().size() == 1 && m.factors()[0].second == 1) {
      if (var != -1) return std::nullopt;
      var = m.factors()[0].first;
      a = c;
    } else {
      return std::nullopt;
    }
  }
  if (var == -1 || a == 0) return std::nullopt;
  return std::make_pair(var, Rational(-b / a));
}

}  // namespace

CompiledModel add_constraints(
    const CompiledModel& model, const std::vector<Polynomial>& eqs,
    const std::vector<std::pair<Polynomial, IneqRel>>& ineqs) {
  CompiledModel out = model;

  std::map<int, Rational> pin;
  std::vector<Polynomial> rest;
  for (const auto& eq : eqs) {
    auto p = linear_pin(eq);
    bool is_param =
        p && model.table->kind(p->first) == VarKind::Parameter &&
        model.block_of(p->first) >= 0;
    if (is_param && (p->second == 0 || p->second == 1))
      pin[p->first] = p->second;
    else if (!eq.is_zero())
      rest.push_back(eq);
  }

  // Propagate: a variable pinned to 1 pins its block siblings to 0, and a
  // block with a single unpinned variable has it forced by sum-to-one.
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& block : out.blocks) {
      Rational pinned_sum(0);
      std::vector<int> open;
      bool has_one = false;
      for (int v : block.vars) {
        auto it = pin.find(v);
        if (it == pin.end()) {
          open.push_back(v);
        } else {
          pinned_sum += it->second;
          if (it->second == 1) has_one = true;
        }
      }
      if (has_one) {
        for (int v : open) {
          pin[v] = 0;
          changed = true;
        }
      } else if (open.size() == 1 && block.vars.size() > 1) {
        pin[open[0]] = Rational(1) - pinned_sum;
        changed = true;
      }
    }
  }

  // Substitute pins into atoms, prune vanished chains, retire variables.
  auto substitute_all = [&](Polynomial p) {
    for (const auto& [v, value] : pin)
      if (p.uses(v)) p = p.substitute(v, Polynomial::constant(out.table, value));
    return p;
  };
  if (!pin.empty()) {
    std::vector<Chain> kept_chains;
    std::vector<Polynomial> kept_atoms;
    std::vector<std::vector<int>> kept_assign, kept_factors;
    for (int i = 0; i < out.chain_count(); ++i) {
      Polynomial atom = substitute_all(out.atoms[i]);
      if (atom.is_zero()) continue;
      kept_chains.push_back(out.chain_list[i]);
      kept_atoms.push_back(std::move(atom));
      if (out.bn) {
        kept_assign.push_back(out.bn->assignments[i]);
        auto factors = out.bn->factor_vars[i];
        for (auto& f : factors)
          if (f >= 0 && pin.count(f)) f = -1;
        kept_factors.push_back(std::move(factors));
      }
    }
    out.chain_list = std::move(kept_chains);
    out.atoms = std::move(kept_atoms);
    if (out.bn) {
      out.bn->assignments = std::move(kept_assign);
      out.bn->factor_vars = std::move(kept_factors);
    }

    std::vector<SimplexBlock> kept_blocks;
    for (const auto& block : out.blocks) {
      SimplexBlock nb{block.label, {}};
      bool resolved = false;
      for (int v : block.vars) {
        auto it = pin.find(v);
        if (it == pin.end())
          nb.vars.push_back(v);
        else if (it->second == 1)
          resolved = true;
      }
      if (!resolved && !nb.vars.empty()) kept_blocks.push_back(std::move(nb));
    }
    out.blocks = std::move(kept_blocks);

    out.sum_to_one.clear();
    for (const auto& block : out.blocks) {
      Polynomial sum(out.table);
      for (int v : block.vars) sum += Polynomial::variable(out.table, v);
      // pinned-to-zero siblings are gone, the remaining mass is still 1
      Rational removed(0);
      for (int v : model.blocks[model.block_of(block.vars[0])].vars)
        if (pin.count(v)) removed += pin.at(v);
      out.sum_to_one.push_back(
          sum - Polynomial::constant(out.table, Rational(1) - removed));
    }

    for (const auto& [v, value] : pin) {
      out.table->retire(v);
      out.pinned[v] = value;
    }
    for (auto& eq : out.equalities) eq = substitute_all(eq);
    for (auto& [p, rel] : out.inequalities) p = substitute_all(p);
  }

  for (const auto& eq : rest) {
    Polynomial s = substitute_all(eq);
    if (!s.is_zero()) out.equalities.push_back(s);
  }
  for (const auto& [p, rel] : ineqs) {
    Polynomial s = substitute_all(p);
    out.inequalities.push_back({s, rel});
  }

  // Register new auxiliary parameters ([0,1] box bounds).
  auto note_aux = [&](const Polynomial& p) {
    for (int v : p.support())
      if (out.table->kind(v) == VarKind::Auxiliary &&
          std::find(out.auxiliary.begin(), out.auxiliary.end(), v) ==
              out.auxiliary.end())
        out.auxiliary.push_back(v);
  };
  for (const auto& eq : out.equalities) note_aux(eq);
  for (const auto& [p, rel] : out.inequalities) note_aux(p);

  return out;
}

}  // namespace causalg
