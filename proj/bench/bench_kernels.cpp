#include <vector>

#include <benchmark/benchmark.h>

#include "ttmcmc/parallel.hpp"
#include "ttmcmc/rng.hpp"

using namespace ttmcmc;
using namespace ttmcmc::kernels;

namespace {

Components components(std::size_t k) {
    Rng rng(1);
    std::vector<double> nu(k), ts(k), om(k);
    for (std::size_t j = 0; j < k; ++j) {
        nu[j] = 20.0 + 3.0 * rng.normal();
        ts[j] = rng.normal();
        om[j] = rng.normal();
    }
    return make_components(nu, ts, om);
}

std::vector<double> observations(std::size_t n) {
    Rng rng(2);
    std::vector<double> y(n);
    for (auto& v : y) v = 20.0 + 4.0 * rng.normal();
    return y;
}

void BM_LogLikelihood(benchmark::State& state, Exec exec) {
    const auto y = observations(static_cast<std::size_t>(state.range(0)));
    const auto c = components(20);
    for (auto _ : state) benchmark::DoNotOptimize(log_likelihood(y, c, exec));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Density(benchmark::State& state, Exec exec) {
    const auto x = observations(static_cast<std::size_t>(state.range(0)));
    const auto c = components(20);
    std::vector<double> out(x.size());
    for (auto _ : state) {
        density(x, c, out, exec);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_DistanceMatrix(benchmark::State& state, Exec exec) {
    Rng rng(3);
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(state.range(0)), std::vector<double>(512));
    for (auto& r : rows)
        for (auto& v : r) v = rng.uniform();
    for (auto _ : state) benchmark::DoNotOptimize(sup_distance_matrix(rows, exec));
}

}  // namespace

BENCHMARK_CAPTURE(BM_LogLikelihood, serial, Exec::serial)->Arg(82)->Arg(245)->Arg(100000);
BENCHMARK_CAPTURE(BM_LogLikelihood, parallel, Exec::parallel)->Arg(82)->Arg(245)->Arg(100000);
BENCHMARK_CAPTURE(BM_Density, serial, Exec::serial)->Arg(512)->Arg(65536);
BENCHMARK_CAPTURE(BM_Density, parallel, Exec::parallel)->Arg(512)->Arg(65536);
BENCHMARK_CAPTURE(BM_DistanceMatrix, serial, Exec::serial)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_DistanceMatrix, parallel, Exec::parallel)->Arg(500)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
