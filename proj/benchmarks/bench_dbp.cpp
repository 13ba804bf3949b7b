#include "enwsn/dbp.hpp"
#include "enwsn/trace.hpp"

#include <benchmark/benchmark.h>

namespace {

enwsn::SensorTrace light(int days) {
    enwsn::SynthSpec s;
    s.days = days;
    s.base = 300;
    s.diurnal_amplitude = 250;
    s.noise_sigma = 4;
    s.step_events_per_day = 6;
    s.step_magnitude = 80;
    return enwsn::synth_trace(s);
}

void BM_DbpRun(benchmark::State& state) {
    const auto trace = light(static_cast<int>(state.range(0)));
    enwsn::dbp::Params p;
    p.m = static_cast<std::size_t>(state.range(1));
    p.l = p.m / 4;
    for (auto _ : state) benchmark::DoNotOptimize(enwsn::dbp::run(trace, p));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(trace.samples.size()));
}
BENCHMARK(BM_DbpRun)->Args({47, 16})->Args({47, 64})->Args({365, 16});

void BM_DbpStreamPush(benchmark::State& state) {
    const auto trace = light(7);
    for (auto _ : state) {
        enwsn::dbp::Stream s(enwsn::dbp::Params{});
        for (const auto& x : trace.samples) benchmark::DoNotOptimize(s.push(x));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(trace.samples.size()));
}
BENCHMARK(BM_DbpStreamPush);

}  // namespace
