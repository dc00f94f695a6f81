// SPDX-License-Identifier: Apache-2.0
//
// ppp-mimo: outage, throughput and capacity analysis for multi-antenna ALOHA networks
// Copyright (C) 2026 The ppp-mimo authors
//
// Serial reference vs OpenMP outage-curve simulation.

#include "pppmimo/mcsim.hpp"

#include <benchmark/benchmark.h>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <cmath>

using namespace pppmimo;

namespace {

void run_curve(benchmark::State &state, const SchemeSpec &scheme, bool parallel)
{
    const NetworkParams net{0.01, 1.0, 3.1, 2.0, std::pow(10.0, 2.5), 1.0};
    const std::vector<double> betas{0.5, 1.0, 2.0};
    SimConfig cfg;
    cfg.trials = static_cast<std::uint64_t>(state.range(0));
    cfg.seed = 1;
    cfg.parallel = parallel;
    for (auto _ : state)
        benchmark::DoNotOptimize(simulate_outage_curve(scheme, net, betas, cfg));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.trials));
#ifdef _OPENMP
    state.counters["threads"] = parallel ? omp_get_max_threads() : 1;
#endif
}

void BM_MrcSerial(benchmark::State &s)
{
    run_curve(s, SchemeSpec::sm_mrc(2, 4), false);
}
void BM_MrcOpenMP(benchmark::State &s)
{
    run_curve(s, SchemeSpec::sm_mrc(2, 4), true);
}
void BM_ZfSerial(benchmark::State &s)
{
    run_curve(s, SchemeSpec::sm_zf(2, 4), false);
}
void BM_ZfOpenMP(benchmark::State &s)
{
    run_curve(s, SchemeSpec::sm_zf(2, 4), true);
}
void BM_OstbcSerial(benchmark::State &s)
{
    run_curve(s, SchemeSpec::ostbc(registry_code("g4_rate34"), 4), false);
}
void BM_OstbcOpenMP(benchmark::State &s)
{
    run_curve(s, SchemeSpec::ostbc(registry_code("g4_rate34"), 4), true);
}

} // namespace

BENCHMARK(BM_MrcSerial)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MrcOpenMP)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ZfSerial)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ZfOpenMP)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OstbcSerial)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OstbcOpenMP)->Arg(4096)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
