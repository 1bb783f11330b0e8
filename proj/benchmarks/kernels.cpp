#include "hyperpts/factor.hpp"
#include "hyperpts/pipeline.hpp"

#include <benchmark/benchmark.h>

using namespace hyperpts;

namespace {

const HypCurve& descent_example() {
  static const HypCurve c = make_curve(-(IPoly{-1, 1, 1} * IPoly{2, 1, 1, 1, 1}));
  return c;
}

// rank-one curve y^2 = -(x^2 - 1)(x^2 + 1)(x^2 + 4) with its generators
const MWInput& rank_one() {
  static const MWInput mw = [] {
    const OddModel om = to_odd_degree_model(make_curve(IPoly{4, 0, 1, 0, -4, 0, -1}));
    const Jacobian<Rat> J = jacobian_q(om.model);
    MWInput in;
    in.curve = om.model;
    in.free = {J.point(20, -800)};
    in.torsion = {J.point(10, 0), QDiv{{80, -8, 1}, {}}};
    in.torsion_orders = {2, 2};
    in.index_coprime = true;
    return in;
  }();
  return mw;
}

void BM_Factor(benchmark::State& state) {
  const IPoly f = descent_example().f * IPoly{-3, 0, 1};
  for (auto _ : state) benchmark::DoNotOptimize(factor_ipoly(f));
}
BENCHMARK(BM_Factor);

void BM_Search(benchmark::State& state) {
  const auto H = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(search(descent_example(), H));
}
BENCHMARK(BM_Search)->Arg(80)->Arg(1519)->Unit(benchmark::kMillisecond);

void BM_CountPoints(benchmark::State& state) {
  const auto p = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(count_points(descent_example(), p));
}
BENCHMARK(BM_CountPoints)->Arg(101)->Arg(1009);

void BM_EverywhereLocally(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(everywhere_locally(descent_example()));
}
BENCHMARK(BM_EverywhereLocally)->Unit(benchmark::kMillisecond);

void BM_SelmerSet(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(selmer_set(descent_example()));
}
BENCHMARK(BM_SelmerSet)->Unit(benchmark::kMillisecond);

void BM_GroupStructure(benchmark::State& state) {
  const auto p = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(group_structure_fp(rank_one().curve, p));
}
BENCHMARK(BM_GroupStructure)->Arg(31)->Arg(101)->Unit(benchmark::kMillisecond);

void BM_JacLog(benchmark::State& state) {
  const auto p = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(jac_log_mod_p2(rank_one().curve, rank_one().free[0], p));
}
BENCHMARK(BM_JacLog)->Arg(11)->Arg(31)->Unit(benchmark::kMillisecond);

void BM_Sieve(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p : primes_up_to(100))
    if (p > 2 && !rank_one().curve.is_bad(p)) primes.push_back(p);
  for (auto _ : state) benchmark::DoNotOptimize(run_sieve(rank_one(), n, primes));
}
BENCHMARK(BM_Sieve)->Arg(24)->Arg(192)->Unit(benchmark::kMillisecond);

void BM_Determination(benchmark::State& state) {
  std::vector<RatPoint> known = search(rank_one().curve, kQuickSearchBound).points;
  for (auto _ : state) benchmark::DoNotOptimize(determine_rational_points(rank_one(), known));
}
BENCHMARK(BM_Determination)->Unit(benchmark::kMillisecond)->Iterations(1);

void BM_Decide(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(decide(descent_example()));
}
BENCHMARK(BM_Decide)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
