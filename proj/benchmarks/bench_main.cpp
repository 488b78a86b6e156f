#include "nhodge/cli_io.hpp"
#include "nhodge/conewise_algebra.hpp"
#include "nhodge/hodge_diamond.hpp"
#include "nhodge/jacobian_oracle.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace nhodge;

namespace {

IntMatrix random_matrix(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> dist(-20, 20);
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = dist(rng);
  return m;
}

void BM_SmithNormalForm(benchmark::State& state) {
  const IntMatrix m = random_matrix(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m));
}
BENCHMARK(BM_SmithNormalForm)->Arg(4)->Arg(8)->Arg(12);

void BM_BareissRank(benchmark::State& state) {
  const RatMatrix m = to_rational(random_matrix(static_cast<std::size_t>(state.range(0)), 5));
  for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_BareissRank)->Arg(8)->Arg(16)->Arg(32);

void BM_FacetEnumeration(benchmark::State& state) {
  const PolytopeSpec spec = builtin_spec("octahedron");
  for (auto _ : state) benchmark::DoNotOptimize(build_polytope(spec));
}
BENCHMARK(BM_FacetEnumeration);

void BM_Diamonds(benchmark::State& state) {
  const StackyFan fan = StackyFan::from_polytope(build_polytope(builtin_spec("octahedron")));
  for (auto _ : state) {
    const BoxCatalog boxes(fan);
    benchmark::DoNotOptimize(assemble_diamonds(fan, boxes));
  }
}
BENCHMARK(BM_Diamonds);

void BM_ConeAlgebra(benchmark::State& state) {
  const StackyFan fan = StackyFan::from_polytope(build_polytope(builtin_spec("octahedron")));
  for (auto _ : state) {
    const GradedClassSpace h(fan);
    benchmark::DoNotOptimize(hard_lefschetz_check(h));
  }
}
BENCHMARK(BM_ConeAlgebra);

void BM_OracleOctahedron(benchmark::State& state) {
  const JacobianOracle o(build_polytope(builtin_spec("octahedron")));
  const auto a = CoefficientAssignment::seeded_random(6, 1);
  OracleOptions opts;
  opts.jobs = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(o.graded_jacobian(a, opts));
}
BENCHMARK(BM_OracleOctahedron)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_FuzzRank3(benchmark::State& state) {
  FuzzConfig cfg;
  cfg.rank = 3;
  cfg.count = 5;
  for (auto _ : state) benchmark::DoNotOptimize(run_fuzz(cfg, RunConfig{}));
}
BENCHMARK(BM_FuzzRank3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
