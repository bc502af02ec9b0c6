// Micro benchmarks for the hot paths: sparse polynomial multiplication,
// Buchberger on compiled models, and the movie identification query.

#include <benchmark/benchmark.h>

#include "causalg/groebner.hpp"
#include "causalg/movie.hpp"
#include "causalg/sampling.hpp"

using namespace causalg;

namespace {

Polynomial random_poly(const TablePtr& table, std::mt19937_64& rng, int vars,
                       int terms, int degree) {
  std::uniform_int_distribution<int> var(0, vars - 1);
  std::uniform_int_distribution<int> exp(0, degree);
  std::uniform_int_distribution<long> coeff(-9, 9);
  Polynomial p(table);
  for (int t = 0; t < terms; ++t) {
    Monomial m;
    for (int v = 0; v < vars; ++v) {
      int e = exp(rng);
      if (e > 0) m = m * Monomial::variable(var(rng), static_cast<unsigned>(e));
    }
    long c = coeff(rng);
    if (c != 0) p += Polynomial::term(table, Rational(c), m);
  }
  return p;
}

TablePtr bench_table(int vars) {
  auto table = std::make_shared<VariableTable>();
  for (int v = 0; v < vars; ++v)
    table->add("x" + std::to_string(v), VarKind::Parameter);
  return table;
}

void BM_polynomial_multiply(benchmark::State& state) {
  auto table = bench_table(8);
  std::mt19937_64 rng(12);
  auto a = random_poly(table, rng, 8, static_cast<int>(state.range(0)), 3);
  auto b = random_poly(table, rng, 8, static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_polynomial_multiply)->Arg(8)->Arg(32)->Arg(128);

void BM_normal_form_atoms(benchmark::State& state) {
  auto bundle = movie_bundle();
  const auto& model = bundle.constrained;
  auto order = MonomialOrder::lex(model.table->size());
  Polynomial sum(model.table);
  for (const auto& atom : model.atoms) sum += atom;
  for (auto _ : state)
    benchmark::DoNotOptimize(normal_form(sum, model.sum_to_one, order));
}
BENCHMARK(BM_normal_form_atoms);

void BM_buchberger_point_ideal(benchmark::State& state) {
  // The observation ideal of a saturated two-binary BN with all four
  // atoms observed: a small but representative elimination workload.
  BNSpec spec;
  spec.variables = {{"X1", 2, {}}, {"X2", 2, {0}}};
  auto model = compile_bn(spec);
  ManifestSpec manifest;
  manifest.name = "atoms";
  for (int i = 0; i < model.chain_count(); ++i)
    manifest.observables.push_back(
        {"q" + std::to_string(i), model.atoms[i]});
  auto obs = build_observation_ideal(model, manifest, nullptr);
  for (auto _ : state)
    benchmark::DoNotOptimize(buchberger(obs.ideal, kDefaultStepLimit));
}
BENCHMARK(BM_buchberger_point_ideal);

void BM_identify_e_exp23(benchmark::State& state) {
  auto bundle = movie_bundle();
  auto manifest = ManifestSpec::merge({bundle.exp2, bundle.exp3});
  for (auto _ : state)
    benchmark::DoNotOptimize(identify_effect(bundle.constrained, bundle.ban,
                                             manifest, bundle.effect_e));
}
BENCHMARK(BM_identify_e_exp23)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
