#include <benchmark/benchmark.h>

#include "biasgauge/oracle.hpp"
#include "biasgauge/stats.hpp"

namespace {

using namespace biasgauge;

void BM_normal_quantile(benchmark::State& state) {
    double p = 0.5;
    for (auto _ : state) {
        p += 1e-9;
        benchmark::DoNotOptimize(normal_quantile(p));
    }
}
BENCHMARK(BM_normal_quantile);

void BM_chisq_quantile(benchmark::State& state) {
    double p = 0.90;
    for (auto _ : state) {
        p += 1e-9;
        benchmark::DoNotOptimize(chisq_quantile(2, p));
    }
}
BENCHMARK(BM_chisq_quantile);

void BM_sample_size(benchmark::State& state) {
    TestParams params;
    double e1 = 0.1;
    for (auto _ : state) {
        e1 += 1e-9;
        benchmark::DoNotOptimize(sample_size(ErrorRate(e1), ErrorRate(0.2), params).raw);
    }
}
BENCHMARK(BM_sample_size);

void BM_simulate_power(benchmark::State& state) {
    TestParams params;
    OracleConfig cfg;
    cfg.replications = static_cast<std::uint64_t>(state.range(0));
    cfg.seed = 1;
    RateVector rates({ErrorRate(0.1), ErrorRate(0.2)});
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_power(rates, 213, params, cfg).power_hat);
    }
    state.SetItemsProcessed(state.iterations() * cfg.replications);
}
BENCHMARK(BM_simulate_power)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
