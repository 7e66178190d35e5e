// Parallel kernels against their serial references.
#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "fracgrow/fractional_calculus.hpp"
#include "fracgrow/growth_model.hpp"

using namespace fracgrow;

namespace {

double f_prime(double x) { return 0.04305 * std::exp(0.04305 * x); }

template <bool Parallel>
void BM_caputo_numeric(benchmark::State& state) {
    const QuadratureSpec q{static_cast<std::size_t>(state.range(0)), 2.0};
    for (auto _ : state) {
        const double v = Parallel ? caputo_numeric(FracOrder(0.5), f_prime, 24.0, q)
                                  : serial::caputo_numeric(FracOrder(0.5), f_prime, 24.0, q);
        benchmark::DoNotOptimize(v);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_predict_table(benchmark::State& state) {
    std::vector<double> etas(static_cast<std::size_t>(state.range(1)));
    for (std::size_t i = 0; i < etas.size(); ++i)
        etas[i] = 0.05 + 0.4 * std::sin(0.1 * static_cast<double>(i));
    const EtaSchedule schedule = EtaSchedule::from_rates(etas);
    std::vector<FracOrder> orders;
    for (long i = 1; i <= state.range(0); ++i)
        orders.emplace_back(static_cast<double>(i) / static_cast<double>(state.range(0)));
    for (auto _ : state) {
        PredictionGrid g = Parallel ? predict_table(0.5322, 0.04305, schedule, orders)
                                    : serial::predict_table(0.5322, 0.04305, schedule, orders);
        benchmark::DoNotOptimize(g.values.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(1));
}

}  // namespace

BENCHMARK(BM_caputo_numeric<false>)->RangeMultiplier(8)->Range(64, 1 << 18);
BENCHMARK(BM_caputo_numeric<true>)->RangeMultiplier(8)->Range(64, 1 << 18);
BENCHMARK(BM_predict_table<false>)->Args({6, 24})->Args({100, 240})->Args({1000, 1200});
BENCHMARK(BM_predict_table<true>)->Args({6, 24})->Args({100, 240})->Args({1000, 1200});

BENCHMARK_MAIN();
