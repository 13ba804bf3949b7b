#include "enwsn/power.hpp"
#include "enwsn/scenario.hpp"
#include "enwsn/text_io.hpp"

#include <benchmark/benchmark.h>

namespace {

enwsn::topo::Topology tunnel() {
    return enwsn::topo::parse_topology(enwsn::text::read_file(ENWSN_FIXTURE_DIR "/tunnel_topology.csv"));
}

void BM_PrepareNetwork(benchmark::State& state) {
    const auto t = tunnel();
    const auto traces = enwsn::scenario::synthesize(enwsn::scenario::tunnel_light_specs(t, 47, 1));
    for (auto _ : state) benchmark::DoNotOptimize(enwsn::power::prepare_network(t, traces, {}));
}
BENCHMARK(BM_PrepareNetwork)->Unit(benchmark::kMillisecond);

void BM_Sweep(benchmark::State& state) {
    const auto t = tunnel();
    const auto net =
        enwsn::power::prepare_network(t, enwsn::scenario::synthesize(enwsn::scenario::tunnel_light_specs(t, 47, 1)), {});
    const auto cat = enwsn::hw::default_catalog();
    for (auto _ : state) benchmark::DoNotOptimize(enwsn::power::sweep(net, cat));
}
BENCHMARK(BM_Sweep)->Unit(benchmark::kMillisecond);

}  // namespace
