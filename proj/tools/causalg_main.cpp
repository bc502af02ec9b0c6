// causalg: compile discrete causal models into exact polynomial
// parametrizations and answer conditioning, intervention, feasibility and
// identifiability queries over them.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "causalg/model_io.hpp"
#include "causalg/movie.hpp"
#include "json.hpp"

using namespace causalg;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInconclusive = 2;

struct Options {
  std::string model;
  std::vector<std::string> constraints;
  std::uint64_t seed = 0;
  std::uint64_t step_limit = kDefaultStepLimit;
  long trials = 10'000;
  std::string out;

  std::string point_file;
  std::string keep;
  std::string event;
  std::vector<std::string> manifests;
  std::string effect_file;
  std::string do_file;
};

void emit(const Options& opt, const std::string& text) {
  if (opt.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.out);
  if (!out) throw Error("cannot write '" + opt.out + "'");
  out << text;
}

CompiledModel load(const Options& opt) {
  if (opt.model.empty()) throw Error("--model is required");
  return load_model(opt.model, opt.constraints);
}

/// Point files: one `<variable> = <rational>` line each, `#` comments.
ParameterPoint read_point(const CompiledModel& model,
                          const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  ParameterPoint point;
  std::string raw;
  while (std::getline(in, raw)) {
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream line(raw);
    std::string name, eq, value;
    if (!(line >> name)) continue;
    if (!(line >> eq >> value) || eq != "=")
      throw Error(path + ": expected '<variable> = <rational>', got '" + raw +
                  "'");
    auto var = model.table->find(name);
    if (!var) throw Error(path + ": unknown variable '" + name + "'");
    Rational v(value.c_str());
    v.canonicalize();
    point.assignment[*var] = v;
  }
  point.validate(model);
  for (const auto& eqc : model.equalities)
    if (eqc.evaluate(point.assignment) != 0)
      throw Error(path + ": the point violates a model equality");
  return point;
}

ParameterPoint resolve_point(const CompiledModel& model, const Options& opt) {
  if (!opt.point_file.empty()) return read_point(model, opt.point_file);
  auto rng = make_rng(opt.seed);
  for (int attempt = 0; attempt < 1000; ++attempt)
    if (auto p = sample_constrained_point(model, rng)) return *p;
  throw Error("could not sample a valid parameter point; give --point");
}

unsigned max_degree(const CompiledModel& model) {
  unsigned d = 0;
  for (const auto& atom : model.atoms) d = std::max(d, atom.total_degree());
  return d;
}

std::string summary(const ModelFile& file, const CompiledModel& base,
                    const CompiledModel& constrained, bool have_constraints) {
  std::ostringstream out;
  const char* kind = file.kind == ModelKind::BN     ? "bn"
                     : file.kind == ModelKind::Tree ? "tree"
                                                    : "poset";
  out << file.name << ": " << kind << " model\n";
  out << base.chain_count() << " atoms, " << base.blocks.size()
      << " blocks, degree " << max_degree(base) << ", free dimension "
      << base.free_dimension() << "\n";
  if (have_constraints)
    out << "constrained: " << constrained.chain_count() << " chains, "
        << constrained.blocks.size() << " blocks, free dimension "
        << constrained.free_dimension() << ", " << constrained.pinned.size()
        << " pinned, " << constrained.equalities.size() << " equalities, "
        << constrained.inequalities.size() << " inequalities, "
        << constrained.auxiliary.size() << " auxiliaries\n";
  return out.str();
}

nlohmann::json point_json(const CompiledModel& model,
                          const ParameterPoint& point) {
  nlohmann::json out;
  for (const auto& [v, value] : point.assignment)
    out[model.table->name(v)] = to_string(value);
  return out;
}

int cmd_compile(const Options& opt) {
  ModelFile file = parse_model_file(opt.model);
  CompiledModel base = compile_model_file(file);
  CompiledModel constrained = apply_constraints(
      base, {file.aux_names, file.eq_lines, file.ineq_lines}, opt.model);
  bool have = !file.eq_lines.empty() || !file.ineq_lines.empty() ||
              !opt.constraints.empty();
  for (const auto& path : opt.constraints)
    constrained =
        apply_constraints(constrained, parse_constraint_file(path), path);
  std::cout << summary(file, base, constrained, have);
  if (!opt.out.empty()) {
    std::ofstream out(opt.out);
    if (!out) throw Error("cannot write '" + opt.out + "'");
    out << export_dot(file);
    std::cout << "graph written to " << opt.out << "\n";
  }
  return kExitOk;
}

int cmd_chains(const Options& opt) {
  auto model = load(opt);
  std::ostringstream out;
  for (const auto& chain : model.chain_list) out << chain.label << "\n";
  emit(opt, out.str());
  return kExitOk;
}

int cmd_export_dot(const Options& opt) {
  if (opt.model.empty()) throw Error("--model is required");
  emit(opt, export_dot(parse_model_file(opt.model)));
  return kExitOk;
}

int cmd_joint(const Options& opt) {
  auto model = load(opt);
  auto joint = mu_eval(model, resolve_point(model, opt));
  emit(opt, joint_lines(model, joint));
  return kExitOk;
}

int cmd_marginal(const Options& opt) {
  auto model = load(opt);
  if (!model.bn) throw Error("marginal needs a BN model");
  if (opt.keep.empty()) throw Error("--keep is required");
  std::vector<int> keep;
  std::istringstream in(opt.keep);
  std::string name;
  while (std::getline(in, name, ',')) {
    int i = model.bn->spec.index_of(name);
    if (i < 0) throw Error("unknown BN variable '" + name + "'");
    keep.push_back(i);
  }
  auto joint = mu_eval(model, resolve_point(model, opt));
  auto marginal = marginalize(model, joint, keep);
  std::ostringstream out;
  for (std::size_t i = 0; i < marginal.probabilities.size(); ++i) {
    nlohmann::json record;
    record["cell"] = marginal.label(model.bn->spec, i);
    record["prob"] = to_string(marginal.probabilities[i]);
    out << record.dump() << "\n";
  }
  emit(opt, out.str());
  return kExitOk;
}

int cmd_condition(const Options& opt) {
  auto model = load(opt);
  if (opt.event.empty()) throw Error("--event is required");
  auto joint = mu_eval(model, resolve_point(model, opt));
  auto conditional =
      condition(model, joint, parse_event(opt.event, model));
  emit(opt, joint_lines(model, conditional));
  return kExitOk;
}

int cmd_do(const Options& opt) {
  auto model = load(opt);
  if (opt.do_file.empty()) throw Error("--do is required");
  auto manipulated =
      manipulate(model, load_manipulation(opt.do_file, model), opt.seed);
  std::cout << "manipulated: " << manipulated.chain_count() << " chains, "
            << manipulated.blocks.size() << " blocks, degree "
            << max_degree(manipulated) << "\n";
  if (!opt.point_file.empty() || !opt.out.empty()) {
    auto point = resolve_point(manipulated, opt);
    emit(opt, joint_lines(manipulated, mu_eval(manipulated, point)));
  }
  return kExitOk;
}

int cmd_identify(const Options& opt) {
  auto model = load(opt);
  if (opt.manifests.empty()) throw Error("--manifest is required");
  if (opt.effect_file.empty()) throw Error("--effect is required");
  std::vector<ManifestSpec> parts;
  for (const auto& path : opt.manifests)
    parts.push_back(load_manifest(path, model));
  auto manifest = ManifestSpec::merge(parts);
  auto effect = load_effect(opt.effect_file, model);
  ManipulationSpec manipulation;
  if (!opt.do_file.empty())
    manipulation = load_manipulation(opt.do_file, model);

  IdentifyOptions options{opt.step_limit, opt.trials, opt.seed};
  auto start = std::chrono::steady_clock::now();
  auto result = identify_effect(model, manipulation, manifest, effect,
                                options);
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start)
                .count();

  nlohmann::json report;
  report["query"] = {{"model", opt.model},
                     {"manifest", manifest.name},
                     {"effect", effect.name}};
  report["budgets"] = {{"step_limit", opt.step_limit},
                       {"trials", opt.trials},
                       {"seed", opt.seed}};
  report["timing_ms"] = ms;
  int code = kExitOk;
  switch (result.verdict) {
    case IdentificationResult::Verdict::Identifiable:
      report["verdict"] = "identifiable";
      if (result.solved) report["expression"] = result.expression;
      break;
    case IdentificationResult::Verdict::NonIdentifiable:
      report["verdict"] = "non-identifiable";
      report["witness"] = {
          {"first", point_json(model, result.witness->first)},
          {"second", point_json(model, result.witness->second)},
          {"effect_first", to_string(result.witness->effect_first)},
          {"effect_second", to_string(result.witness->effect_second)}};
      break;
    default:
      report["verdict"] = "undetermined";
      report["reason"] = result.reason;
      code = kExitInconclusive;
      break;
  }
  emit(opt, report.dump(2) + "\n");
  return code;
}

int cmd_feasible(const Options& opt) {
  auto model = load(opt);
  auto result = feasible(model, opt.trials, opt.seed);
  nlohmann::json report;
  report["trials"] = result.trials;
  if (result.found()) {
    report["verdict"] = "found-point";
    report["point"] = point_json(model, *result.point);
  } else {
    report["verdict"] = "none-found";
  }
  emit(opt, report.dump(2) + "\n");
  return result.found() ? kExitOk : kExitInconclusive;
}

int cmd_reproduce_movie(const Options& opt) {
  IdentifyOptions options{opt.step_limit, opt.trials, opt.seed};
  auto report = reproduce_movie_example(options);
  emit(opt, report.json + "\n");
  return report.claims_hold ? kExitOk : kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact algebraic causality toolkit"};
  app.require_subcommand(1);
  Options opt;
  if (const char* env = std::getenv("CAUSALG_SEED"))
    opt.seed = std::strtoull(env, nullptr, 10);

  app.add_option("--model", opt.model, "model file");
  app.add_option("--constraints", opt.constraints, "extra constraint files");
  app.add_option("--seed", opt.seed, "random seed (default CAUSALG_SEED)");
  app.add_option("--step-limit", opt.step_limit, "Groebner step budget");
  app.add_option("--trials", opt.trials, "sampling trial budget");
  app.add_option("--out", opt.out, "output file (default stdout)");

  auto* compile = app.add_subcommand("compile", "model summary + DOT export");
  auto* joint = app.add_subcommand("joint", "joint distribution at a point");
  auto* marginal = app.add_subcommand("marginal", "marginal at a point");
  auto* cond = app.add_subcommand("condition", "condition on an event");
  auto* manip = app.add_subcommand("do", "apply a manipulation");
  auto* identify = app.add_subcommand("identify", "identifiability query");
  auto* feas = app.add_subcommand("feasible", "feasibility search");
  auto* chains = app.add_subcommand("chains", "list chain labels");
  auto* dot = app.add_subcommand("export-dot", "print the DOT graph");
  app.add_subcommand("reproduce-movie", "run the bundled running example");

  for (auto* sub : {joint, marginal, cond, manip})
    sub->add_option("--point", opt.point_file, "parameter point file");
  marginal->add_option("--keep", opt.keep, "comma-separated BN variables");
  cond->add_option("--event", opt.event, "event (values or atom labels)");
  for (auto* sub : {manip, identify})
    sub->add_option("--do", opt.do_file, "manipulation file");
  identify->add_option("--manifest", opt.manifests, "manifest files");
  identify->add_option("--effect", opt.effect_file, "effect file");
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);
  try {
    if (compile->parsed()) return cmd_compile(opt);
    if (joint->parsed()) return cmd_joint(opt);
    if (marginal->parsed()) return cmd_marginal(opt);
    if (cond->parsed()) return cmd_condition(opt);
    if (manip->parsed()) return cmd_do(opt);
    if (identify->parsed()) return cmd_identify(opt);
    if (feas->parsed()) return cmd_feasible(opt);
    if (chains->parsed()) return cmd_chains(opt);
    if (dot->parsed()) return cmd_export_dot(opt);
    return cmd_reproduce_movie(opt);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
