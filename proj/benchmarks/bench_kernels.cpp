#include <benchmark/benchmark.h>

#include "npspec/mellin.hpp"
#include "npspec/spectral_curves.hpp"

using namespace npspec;

static void BM_m3_line(benchmark::State& state) {
    const double eps = std::pow(10.0, -static_cast<double>(state.range(0)));
    double xi = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(mellin::m3_line(xi, eps));
        xi += 1e-6; // defeat value caching across iterations
    }
}
BENCHMARK(BM_m3_line)->DenseRange(0, 8, 2);

static void BM_m1_line(benchmark::State& state) {
    const double eps = std::pow(10.0, -static_cast<double>(state.range(0)));
    double xi = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(mellin::m1_line(xi, eps));
        xi += 1e-6;
    }
}
BENCHMARK(BM_m1_line)->DenseRange(0, 8, 2);

static void BM_m3_general(benchmark::State& state) {
    double im = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(mellin::mellin_m3({1.1, im}, 0.25));
        im += 1e-6;
    }
}
BENCHMARK(BM_m3_general);

static void BM_sigma_curve(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(curves::sample_curve(0.5, 1.234));
}
BENCHMARK(BM_sigma_curve);

BENCHMARK_MAIN();
