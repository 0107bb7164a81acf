#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "wellkit/applications.hpp"
#include "wellkit/wellcore.hpp"

using namespace wellkit;

namespace {

WellFunction random_well_function(int n) {
  std::mt19937_64 rng(8675309);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  std::vector<std::vector<double>> vals(n);
  for (auto& v : vals) v = {val(rng)};
  SampledMap m = build_map(Interval1D{0.0, 1.0, n}, vals, 1);
  WellOptions opts;
  opts.jitter = true;
  return well_function(m, TargetPoint{{0.0}}, opts);
}

SampledMap swirl_map(int n) {
  TriangulatedRect dom{-1.0, 1.0, -1.0, 1.0, n, n};
  SampledMap probe = build_map(dom, std::vector<std::vector<double>>(n * n, {0.0, 0.0}), 2);
  std::vector<std::vector<double>> vals;
  for (int v = 0; v < n * n; ++v) {
    double x = probe.px[v], y = probe.py[v];
    vals.push_back({x * x - y * y + 0.05, 2 * x * y - 0.07});
  }
  return build_map(dom, vals, 2);
}

void BM_rank_profile(benchmark::State& state) {
  WellFunction w = random_well_function((int)state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rank_profile(w));
}

void BM_rank_profile_serial(benchmark::State& state) {
  WellFunction w = random_well_function((int)state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rank_profile_serial(w));
}

void BM_contour_field(benchmark::State& state) {
  SampledMap f = swirl_map(12);
  TriangulatedRect grid{-0.4, 0.4, -0.4, 0.4, (int)state.range(0), (int)state.range(0)};
  for (auto _ : state) benchmark::DoNotOptimize(contour_field(f, grid));
}

void BM_contour_field_serial(benchmark::State& state) {
  SampledMap f = swirl_map(12);
  TriangulatedRect grid{-0.4, 0.4, -0.4, 0.4, (int)state.range(0), (int)state.range(0)};
  for (auto _ : state) benchmark::DoNotOptimize(contour_field_serial(f, grid));
}

}  // namespace

BENCHMARK(BM_rank_profile)->Arg(64)->Arg(256)->Arg(1024);
BENCHMARK(BM_rank_profile_serial)->Arg(64)->Arg(256)->Arg(1024);
BENCHMARK(BM_contour_field)->Arg(4)->Arg(8);
BENCHMARK(BM_contour_field_serial)->Arg(4)->Arg(8);

BENCHMARK_MAIN();
