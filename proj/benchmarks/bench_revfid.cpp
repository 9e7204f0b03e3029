#include <benchmark/benchmark.h>

#include <revfid/revfid.hpp>

using namespace revfid;

namespace {

std::pair<DensityMatrix, DensityMatrix> pair_of(int d) {
  return {random_density(d, d, 1), random_density(d, d, 2)};
}

void BM_EigHermitian(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto h = random_density(d, d, 3).hermitian();
  for (auto _ : state) benchmark::DoNotOptimize(eig_hermitian(h));
}
BENCHMARK(BM_EigHermitian)->RangeMultiplier(2)->Range(2, 64);

void BM_FMin(benchmark::State& state) {
  const auto [rho, sigma] = pair_of(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(f_min(rho, sigma));
}
BENCHMARK(BM_FMin)->RangeMultiplier(2)->Range(2, 64);

void BM_FMinViaGeomean(benchmark::State& state) {
  const auto [rho, sigma] = pair_of(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(f_min_via_geomean(rho, sigma));
}
BENCHMARK(BM_FMinViaGeomean)->RangeMultiplier(2)->Range(2, 64);

void BM_UhlmannFidelity(benchmark::State& state) {
  const auto [rho, sigma] = pair_of(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(uhlmann_fidelity(rho, sigma));
}
BENCHMARK(BM_UhlmannFidelity)->RangeMultiplier(2)->Range(2, 64);

void BM_MinimalReverseTest(benchmark::State& state) {
  const auto [rho, sigma] = pair_of(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(minimal_reverse_test(rho, sigma));
}
BENCHMARK(BM_MinimalReverseTest)->RangeMultiplier(2)->Range(2, 32);

void BM_GeneralReverseTest(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto [rho, sigma] = pair_of(d);
  const Matrix a = sample_contraction(transition_operator(rho, sigma), 5);
  for (auto _ : state) benchmark::DoNotOptimize(general_reverse_test(rho, sigma, a, 2 * d));
}
BENCHMARK(BM_GeneralReverseTest)->RangeMultiplier(2)->Range(2, 32);

void BM_FisherReport(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Rng rng(6);
  const auto rho = random_density(d, rng);
  const TangentPoint tp(rho, random_tangent(rho, 1.0, rng));
  for (auto _ : state) benchmark::DoNotOptimize(fisher_report(tp));
}
BENCHMARK(BM_FisherReport)->RangeMultiplier(2)->Range(2, 32);

void BM_GeodesicLength(benchmark::State& state) {
  const auto [rho, sigma] = pair_of(2);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(curve_length(fmin_geodesic(rho, sigma, n), Metric::rld));
}
BENCHMARK(BM_GeodesicLength)->Arg(101)->Arg(1001);

void BM_RldFlow(benchmark::State& state) {
  const auto [rho, sigma] = pair_of(static_cast<int>(state.range(0)));
  const auto gs = fmin_geodesic_start(rho, sigma);
  for (auto _ : state) benchmark::DoNotOptimize(rld_geodesic_flow(gs.start, gs.duration / 1000, 1000));
}
BENCHMARK(BM_RldFlow)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_FrEstimate(benchmark::State& state) {
  const auto [rho, sigma] = pair_of(2);
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fr_estimate(rho, sigma, k, 4, 1));
}
BENCHMARK(BM_FrEstimate)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
