#include <benchmark/benchmark.h>

#include "tourney/autgroup.hpp"
#include "tourney/generators.hpp"

using namespace tourney;

namespace {

Tournament random_instance(int n, std::uint64_t seed) {
  RngStream rng(seed);
  return random_tournament(n, rng);
}

void BM_BruteAut(benchmark::State& state) {
  Tournament t = random_instance(static_cast<int>(state.range(0)), 99);
  for (auto _ : state) {
    PermGroup g = brute_aut(t);
    benchmark::DoNotOptimize(g.order());
  }
}
BENCHMARK(BM_BruteAut)->Arg(8)->Arg(16)->Arg(32)->Arg(48);

void BM_BruteAsymGadget(benchmark::State& state) {
  // asymmetry query on the color-removal gadget of a tri composite, the hot
  // shape inside the pair sampler
  int n = static_cast<int>(state.range(0));
  RngStream rng(7);
  Tournament t = random_tournament(n, rng);
  Tournament gadget = encode_colors_padded(tri(individualize(t, 0), individualize(t, 1)));
  for (auto _ : state) benchmark::DoNotOptimize(brute_is_asymmetric(gadget));
}
BENCHMARK(BM_BruteAsymGadget)->Arg(5)->Arg(9)->Arg(12);

void BM_ChainBuild(benchmark::State& state) {
  Tournament t = lex_product(c3(), c3());
  std::vector<Perm> gens = brute_aut(t).generators();
  for (auto _ : state) {
    PermGroup g = PermGroup::from_generators(9, gens);
    benchmark::DoNotOptimize(g.order());
  }
}
BENCHMARK(BM_ChainBuild);

void BM_IntersectWithAut(benchmark::State& state) {
  Tournament prod = lex_product(c3(), c3());
  std::vector<Perm> wreath = {
      from_cycles(9, {{0, 3, 6}, {1, 4, 7}, {2, 5, 8}}),
      from_cycles(9, {{0, 1, 2}}),
      from_cycles(9, {{3, 4, 5}}),
      from_cycles(9, {{6, 7, 8}}),
  };
  PermGroup lift = PermGroup::from_generators(9, wreath);
  for (auto _ : state) {
    PermGroup g = intersect_with_aut(lift, prod);
    benchmark::DoNotOptimize(g.order());
  }
}
BENCHMARK(BM_IntersectWithAut);

void BM_PairDraw(benchmark::State& state) {
  BruteAsymmetryOracle o1;
  OracleStack stack(o1);
  RngStream rng(3);
  Tournament prod = lex_product(c3(), c3());
  for (int warm = 0; warm < 2000; ++warm) sample_orbit_pair(prod, stack, rng);
  for (auto _ : state) benchmark::DoNotOptimize(sample_orbit_pair(prod, stack, rng).v);
}
BENCHMARK(BM_PairDraw);

void BM_AnalyticExtraction(benchmark::State& state) {
  int k = static_cast<int>(state.range(0));
  std::vector<double> cumulative;
  double acc = 0;
  for (int i = 0; i < k; ++i) cumulative.push_back(acc += 1.0 / k);
  auto draw = [&](RngStream& rng) {
    double x = rng.unit();
    for (std::size_t i = 0; i < cumulative.size(); ++i)
      if (x < cumulative[i]) return static_cast<int>(i);
    return k - 1;
  };
  SamplerConfig desk;
  std::uint64_t seed = 1;
  for (auto _ : state) {
    RngStream rng(seed++);
    auto ext = extract_characteristic<int>(draw, desk, 0.05, rng);
    benchmark::DoNotOptimize(ext.subset.size());
  }
}
BENCHMARK(BM_AnalyticExtraction)->Arg(2)->Arg(8)->Arg(16);

void BM_AutGroupExactOracle(benchmark::State& state) {
  Tournament t = lex_product(transitive_tournament(3), c3());
  SuborbitOracleFn oracle = exact_suborbit_oracle();
  std::uint64_t seed = 1;
  for (auto _ : state) {
    RngStream rng(seed++);
    benchmark::DoNotOptimize(aut_group(t, oracle, rng).order());
  }
}
BENCHMARK(BM_AutGroupExactOracle);

}  // namespace

BENCHMARK_MAIN();
