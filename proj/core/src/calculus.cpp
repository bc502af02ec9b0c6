#include "causalg/calculus.hpp"

#include <algorithm>

namespace causalg {

void ParameterPoint::validate(const CompiledModel& model) const {
  for (const auto& block : model.blocks) {
    Rational sum(0);
    for (int v : block.vars) {
      auto it = assignment.find(v);
      if (it == assignment.end())
        throw Error("no value for variable '" + model.table->name(v) + "'");
      if (it->second < 0 || it->second > 1)
        throw Error("value of '" + model.table->name(v) +
                    "' outside [0,1]: " + to_string(it->second));
      sum += it->second;
    }
    if (sum != 1)
      throw Error("block '" + block.label + "' sums to " + to_string(sum) +
                  ", expected 1");
  }
  for (int v : model.auxiliary) {
    auto it = assignment.find(v);
    if (it != assignment.end() && (it->second < 0 || it->second > 1))
      throw Error("auxiliary '" + model.table->name(v) +
                  "' outside [0,1]: " + to_string(it->second));
  }
}

void JointPoint::validate(const CompiledModel& model) const {
  if (static_cast<int>(probabilities.size()) != model.chain_count())
    throw Error("joint point has " + std::to_string(probabilities.size()) +
                " entries, model has " + std::to_string(model.chain_count()) +
                " chains");
  Rational sum(0);
  for (const auto& p : probabilities) {
    if (p < 0) throw Error("negative probability " + to_string(p));
    sum += p;
  }
  if (sum != 1)
    throw Error("joint probabilities sum to " + to_string(sum) +
                ", expected 1");
}

std::vector<int> EventSpec::resolve(const CompiledModel& model) const {
  std::vector<int> out;
  if (!values.empty()) {
    if (!model.bn) throw Error("value-constraint events need a BN model");
    for (int i = 0; i < model.chain_count(); ++i) {
      bool match = true;
      for (auto [var, value] : values) {
        if (var < 0 || var >= static_cast<int>(model.bn->spec.variables.size()))
          throw Error("event variable index out of range");
        if (model.bn->assignments[i][var] != value) match = false;
      }
      if (match) out.push_back(i);
    }
  }
  for (const auto& label : atom_labels) out.push_back(model.find_chain(label));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.empty()) throw Error("event matches no chain");
  return out;
}

JointPoint mu_eval(const CompiledModel& model, const ParameterPoint& point) {
  point.validate(model);
  JointPoint joint;
  for (const auto& atom : model.atoms)
    joint.probabilities.push_back(atom.evaluate(point.assignment));
  return joint;
}

ParameterPoint invert_mu(const CompiledModel& model, const JointPoint& joint) {
  joint.validate(model);
  ParameterPoint point;
  for (std::size_t b = 0; b < model.blocks.size(); ++b) {
    Rational denom(0);
    for (int i : model.chains_through_block(static_cast<int>(b)))
      denom += joint.probabilities[i];
    if (denom == 0)
      throw BoundaryPoint("block '" + model.blocks[b].label +
                          "' has mass zero, primitive probabilities "
                          "undetermined");
    for (int v : model.blocks[b].vars) {
      Rational numer(0);
      for (int i : model.chains_using_var(v)) numer += joint.probabilities[i];
      point.assignment[v] = numer / denom;
    }
  }
  return point;
}

std::vector<std::vector<int>> marginal_points(const BNSpec& spec,
                                              const std::vector<int>& keep) {
  if (keep.empty()) throw Error("empty marginal variable set");
  for (int k : keep)
    if (k < 0 || k >= static_cast<int>(spec.variables.size()))
      throw Error("marginal variable index out of range");
  std::vector<std::vector<int>> out;
  std::vector<int> x(keep.size(), 1);
  while (true) {
    out.push_back(x);
    int i = static_cast<int>(keep.size()) - 1;
    for (; i >= 0; --i) {
      if (x[i] < spec.variables[keep[i]].levels) {
        ++x[i];
        break;
      }
      x[i] = 1;
    }
    if (i < 0) break;
  }
  return out;
}

std::string Marginal::label(const BNSpec& spec, std::size_t entry) const {
  std::string out = "q(";
  for (std::size_t j = 0; j < keep.size(); ++j) {
    if (j) out += ",";
    out += spec.variables[keep[j]].name + "=" +
           std::to_string(points[entry][j]);
  }
  return out + ")";
}

namespace {

long marginal_index(const BNSpec& spec, const std::vector<int>& keep,
                    const std::vector<int>& assignment) {
  long idx = 0;
  for (int k : keep) idx = idx * spec.variables[k].levels + (assignment[k] - 1);
  return idx;
}

}  // namespace

Marginal marginalize(const CompiledModel& model, const JointPoint& joint,
                     const std::vector<int>& keep) {
  if (!model.bn) throw Error("marginalize needs a BN model; use events");
  joint.validate(model);
  Marginal out;
  out.keep = keep;
  out.points = marginal_points(model.bn->spec, keep);
  out.probabilities.assign(out.points.size(), Rational(0));
  for (int i = 0; i < model.chain_count(); ++i)
    out.probabilities[marginal_index(model.bn->spec, keep,
                                     model.bn->assignments[i])] +=
        joint.probabilities[i];
  return out;
}

std::vector<Polynomial> marginal_polynomials(const CompiledModel& model,
                                             const std::vector<int>& keep) {
  if (!model.bn) throw Error("marginal polynomials need a BN model");
  auto points = marginal_points(model.bn->spec, keep);
  std::vector<Polynomial> out(points.size(), Polynomial::zero(model.table));
  for (int i = 0; i < model.chain_count(); ++i)
    out[marginal_index(model.bn->spec, keep, model.bn->assignments[i])] +=
        model.atoms[i];
  return out;
}

std::vector<Rational> aggregate_events(const CompiledModel& model,
                                       const JointPoint& joint,
                                       const std::vector<EventSpec>& partition) {
  joint.validate(model);
  std::vector<int> seen(model.chain_count(), 0);
  std::vector<Rational> out;
  for (const auto& cell : partition) {
    Rational mass(0);
    for (int i : cell.resolve(model)) {
      if (seen[i]++)
        throw Error("partition cells overlap on chain '" +
                    model.chain_list[i].label + "'");
      mass += joint.probabilities[i];
    }
    out.push_back(mass);
  }
  for (int i = 0; i < model.chain_count(); ++i)
    if (!seen[i])
      throw Error("partition does not cover chain '" +
                  model.chain_list[i].label + "'");
  return out;
}

JointPoint condition(const CompiledModel& model, const JointPoint& joint,
                     const EventSpec& event) {
  joint.validate(model);
  auto inside = event.resolve(model);
  Rational q(0);
  for (int i : inside) q += joint.probabilities[i];
  if (q == 0) throw ZeroProbabilityEvent("event has probability zero");
  JointPoint out;
  out.probabilities.assign(model.chain_count(), Rational(0));
  for (int i : inside) out.probabilities[i] = joint.probabilities[i] / q;
  return out;
}

}  // namespace causalg
