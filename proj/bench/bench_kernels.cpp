// SPDX-License-Identifier: Apache-2.0
// Serial reference vs OpenMP kernels.
#include <benchmark/benchmark.h>

#include <vector>

#include "authec/markov_ec.hpp"
#include "authec/montecarlo.hpp"
#include "authec/rate_opt.hpp"
#include "authec/reference.hpp"
#include "authec/surrogate.hpp"

using namespace authec;

namespace {

std::vector<SubcarrierInputs> ec_inputs(std::size_t n) {
    std::vector<SubcarrierInputs> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double q = 0.2 + 0.6 * static_cast<double>(i % 17) / 16.0;
        v[i].row = transition_row(Priors{}, 0.1, 0.01, q, 1.0 - q);
        v[i].r_alice = 35.0;
        v[i].r_eve = 30.0;
    }
    return v;
}

SweepSpec small_sweep() {
    SweepSpec s;
    s.thetas = {0.1, 0.3};
    s.pi_alices = {0.5, 0.9};
    s.pfas = {0.1, 0.5};
    s.a_per_point = 4;
    s.grid_points = 201;
    return s;
}

SimConfig sim(std::size_t episodes) {
    SimConfig c;
    c.n_episodes = episodes;
    return c;
}

}  // namespace

static void BM_EcTotalParallel(benchmark::State& st) {
    const auto in = ec_inputs(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(ec_total(in, QosParams{}).total);
}
static void BM_EcTotalSerial(benchmark::State& st) {
    const auto in = ec_inputs(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(reference::ec_total(in, QosParams{}).total);
}
BENCHMARK(BM_EcTotalParallel)->Arg(256)->Arg(65536);
BENCHMARK(BM_EcTotalSerial)->Arg(256)->Arg(65536);

static void BM_GridParallel(benchmark::State& st) {
    const EcContext ctx;
    for (auto _ : st) benchmark::DoNotOptimize(grid_search_rate(0.0, 120.0, 4001, ctx).r_star);
}
static void BM_GridSerial(benchmark::State& st) {
    const EcContext ctx;
    for (auto _ : st) benchmark::DoNotOptimize(reference::grid_search_rate(0.0, 120.0, 4001, ctx).r_star);
}
BENCHMARK(BM_GridParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GridSerial)->Unit(benchmark::kMillisecond);

static void BM_MonteCarloParallel(benchmark::State& st) {
    const auto c = sim(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(empirical_ec(c).empirical_ec);
}
static void BM_MonteCarloSerial(benchmark::State& st) {
    const auto c = sim(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(reference::empirical_ec(c).empirical_ec);
}
BENCHMARK(BM_MonteCarloParallel)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarloSerial)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_DatasetParallel(benchmark::State& st) {
    const auto s = small_sweep();
    for (auto _ : st) benchmark::DoNotOptimize(generate_dataset(s, GdConfig{}, 7).data.size());
}
static void BM_DatasetSerial(benchmark::State& st) {
    const auto s = small_sweep();
    for (auto _ : st) benchmark::DoNotOptimize(reference::generate_dataset(s, GdConfig{}, 7).data.size());
}
BENCHMARK(BM_DatasetParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DatasetSerial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
