#include <benchmark/benchmark.h>

#include "conetri/bpft.hpp"
#include "conetri/generators.hpp"
#include "conetri/numtheory.hpp"
#include "conetri/random.hpp"
#include "conetri/unimodular.hpp"

using namespace conetri;

namespace {

IntMatrix random_matrix(std::size_t n, long bound, std::uint64_t seed) {
  Rng rng(seed);
  IntMatrix m(n, n);
  do {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.in_range(-bound, bound);
  } while (determinant(m) == 0);
  return m;
}

SimplicialCone bpft_cone(unsigned d, std::uint64_t seed) {
  ConeSpec spec;
  spec.d = d;
  spec.seed = seed;
  spec.max_entry = 20;
  return random_cone(spec, [](const SimplicialCone& c) {
    return c.multiplicity() > 1 && threshold_exceeded(p_max(c.multiplicity()), static_cast<unsigned>(c.dimension()));
  });
}

void BM_Determinant(benchmark::State& state) {
  const IntMatrix m = random_matrix(static_cast<std::size_t>(state.range(0)), 1000, 1);
  for (auto _ : state) benchmark::DoNotOptimize(determinant(m));
}
BENCHMARK(BM_Determinant)->Arg(3)->Arg(6)->Arg(12);

void BM_SmithNormalForm(benchmark::State& state) {
  const IntMatrix m = random_matrix(static_cast<std::size_t>(state.range(0)), 50, 2);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m));
}
BENCHMARK(BM_SmithNormalForm)->Arg(3)->Arg(6)->Arg(10);

void BM_Factorize(benchmark::State& state) {
  // Product of two primes near 2^31 forces the Pollard rho path.
  const Integer n = Integer("2147483647") * Integer("2147483629");
  for (auto _ : state) benchmark::DoNotOptimize(factorize(n));
}
BENCHMARK(BM_Factorize);

void BM_ParPoints(benchmark::State& state) {
  const SimplicialCone c = two_dim_prime(Integer(state.range(0)));
  const QuotientGroup g = c.quotient_group();
  for (auto _ : state) benchmark::DoNotOptimize(collect(g.par_points()));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ParPoints)->Arg(101)->Arg(1009)->Arg(10007);

void BM_RunBpft(benchmark::State& state) {
  const SimplicialCone c = bpft_cone(static_cast<unsigned>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(run_bpft(c));
}
BENCHMARK(BM_RunBpft)->Arg(2)->Arg(3);

void BM_Pipeline(benchmark::State& state) {
  const SimplicialCone c = bpft_cone(3, 11);
  const auto strategy = static_cast<PipelineStrategy>(state.range(0));
  state.SetLabel(to_string(strategy));
  for (auto _ : state) benchmark::DoNotOptimize(pipeline_finres(c, strategy));
}
BENCHMARK(BM_Pipeline)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
