// Micro-benchmarks for the exhaustive kernels the reproduction suites lean on.

#include <benchmark/benchmark.h>

#include <random>

#include "dmw/catalog.hpp"
#include "dmw/consequence.hpp"
#include "dmw/hierarchy.hpp"
#include "dmw/rules.hpp"
#include "dmw/sequent.hpp"
#include "dmw/upset.hpp"
#include "dmw/validity.hpp"

using namespace dmw;

static void BM_RuleValid(benchmark::State& state) {
  const auto m = catalog("DMm2");
  const Rule r = separating_rule("Q9");
  const ValidityOptions opts{kDefaultVariableCap, static_cast<unsigned>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(rule_valid(r, m, opts).valid);
}
BENCHMARK(BM_RuleValid)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_CanonicalForm(benchmark::State& state) {
  const auto m = catalog("DMm1^2");
  for (auto _ : state) benchmark::DoNotOptimize(canonical_form(m));
}
BENCHMARK(BM_CanonicalForm)->Unit(benchmark::kMicrosecond);

static void BM_Substructures(benchmark::State& state) {
  const auto m = catalog("DMm2");
  for (auto _ : state) benchmark::DoNotOptimize(substructures(m).size());
}
BENCHMARK(BM_Substructures)->Unit(benchmark::kMillisecond);

static void BM_HssLeq(benchmark::State& state) {
  const auto a = catalog("DMm1"), b = catalog("N9");
  for (auto _ : state) benchmark::DoNotOptimize(hss_leq(a, b).has_value());
}
BENCHMARK(BM_HssLeq)->Unit(benchmark::kMicrosecond);

static void BM_ThetaKleene(benchmark::State& state) {
  const auto& l = catalog("DMm2").lattice;
  for (auto _ : state) benchmark::DoNotOptimize(theta_kleene(l).block_count());
}
BENCHMARK(BM_ThetaKleene)->Unit(benchmark::kMicrosecond);

static void BM_GenerateNFilter(benchmark::State& state) {
  const auto& l = catalog("DMm2").lattice;
  ElemSet u(l.size(), {l.top()});
  for (auto _ : state) benchmark::DoNotOptimize(generate_n_filter(l, u, static_cast<int>(state.range(0))).count());
}
BENCHMARK(BM_GenerateNFilter)->Arg(1)->Arg(2)->Unit(benchmark::kMicrosecond);

static void BM_NpcpEtl(benchmark::State& state) {
  const Logic etl(catalog("M4"));
  for (auto _ : state) benchmark::DoNotOptimize(check_npcp(etl, 2).holds);
}
BENCHMARK(BM_NpcpEtl)->Unit(benchmark::kMillisecond);

static void BM_EnumerateFilter2(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_level(LevelKind::filter, 2).classes.size());
}
BENCHMARK(BM_EnumerateFilter2)->Unit(benchmark::kMillisecond)->Iterations(1);

static void BM_ProveEcq(benchmark::State& state) {
  const auto cfg = ecq_calculus();
  std::mt19937_64 rng(1);
  std::vector<Sequent> batch;
  for (int i = 0; i < 50; ++i) batch.push_back(random_sequent(rng, 3, 2, 3));
  for (auto _ : state)
    for (const auto& s : batch) benchmark::DoNotOptimize(prove(cfg, s).goals_explored);
}
BENCHMARK(BM_ProveEcq)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
