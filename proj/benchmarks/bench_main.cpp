#include <benchmark/benchmark.h>

#include "selbias/estimate.hpp"
#include "selbias/evaluation.hpp"
#include "selbias/io.hpp"
#include "selbias/rng.hpp"
#include "selbias/scenarios.hpp"
#include "selbias/tables.hpp"

using namespace selbias;

namespace {

void BM_Philox(benchmark::State& state) {
  rng::PhiloxCounter c{0, 1, 2, 3};
  const rng::PhiloxKey k{7, 11};
  for (auto _ : state) {
    ++c[0];
    benchmark::DoNotOptimize(rng::philox4x32_10(c, k));
  }
}
BENCHMARK(BM_Philox);

void BM_StreamNormal(benchmark::State& state) {
  rng::RngStream s(rng::StreamPath(1, 0, rng::Domain::Auxiliary), 0);
  for (auto _ : state) benchmark::DoNotOptimize(s.next_normal());
}
BENCHMARK(BM_StreamNormal);

void BM_NormalQuantile(benchmark::State& state) {
  double p = 0.0001;
  for (auto _ : state) {
    p += 0.0137;
    if (p >= 1.0) p -= 0.9999;
    benchmark::DoNotOptimize(rng::normal_quantile(p));
  }
}
BENCHMARK(BM_NormalQuantile);

void BM_DrawS1(benchmark::State& state) {
  const auto s = builtin_family("S1").front().scenario;
  std::uint64_t rep = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(draw_dataset(s, rng::StreamPath(1, rep++, rng::Domain::Data)));
  }
}
BENCHMARK(BM_DrawS1);

// One estimate on a simulated S1 dataset (3 groups of 40) at B = 80.
void BM_EstimateS1(benchmark::State& state, const char* method) {
  const auto s = builtin_family("S1").front().scenario;
  const Dataset d = draw_dataset(s, rng::StreamPath(1, 0, rng::Domain::Data));
  const Method m = parse_method(method);
  std::uint64_t rep = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        run_estimator(d, m, 80, rng::StreamPath(1, rep++, rng::Domain::Bootstrap)).value);
  }
}
BENCHMARK_CAPTURE(BM_EstimateS1, jk, "jk");
BENCHMARK_CAPTURE(BM_EstimateS1, nb1, "nb1");
BENCHMARK_CAPTURE(BM_EstimateS1, nb2, "nb2");
BENCHMARK_CAPTURE(BM_EstimateS1, pb2, "pb2");
BENCHMARK_CAPTURE(BM_EstimateS1, pb3, "pb3")->Unit(benchmark::kMillisecond);

// AWARD-5 summary data at B = 1000.
void BM_Award5(benchmark::State& state, const char* method) {
  const Dataset d = award5_dataset();
  const Method m = parse_method(method);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        run_estimator(d, m, 1000, rng::StreamPath(1, 0, rng::Domain::Bootstrap)).value);
  }
}
BENCHMARK_CAPTURE(BM_Award5, pb1, "pb1")->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_Award5, pb2, "pb2")->Unit(benchmark::kMillisecond);

// Full replications of the S1 study with the nonparametric columns.
void BM_ReplicationS1(benchmark::State& state) {
  const auto s = builtin_family("S1").front().scenario;
  const auto methods = parse_method_list("traditional,shrink,jk,nb1,nb2,nb2s");
  std::uint64_t rep = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_replication(s, methods, 80, 1, rep++));
  }
}
BENCHMARK(BM_ReplicationS1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
