#include "enwsn/scenario.hpp"

#include "enwsn/error.hpp"

#include <cmath>
#include <future>
#include <vector>

namespace enwsn::scenario {

namespace {

std::uint64_t node_seed(std::uint64_t seed, NodeId id) { return seed * 1000003ULL + id.value; }

}  // namespace

Preset parse_preset(std::string_view s) {
    if (s == "tunnel") return Preset::tunnel;
    if (s == "intel") return Preset::intel;
    throw ConfigError("unknown preset '" + std::string(s) + "' (expected tunnel or intel)");
}

std::map<NodeId, SynthSpec> tunnel_light_specs(const topo::Topology& topology, int days, std::uint64_t seed) {
    const auto& entrance = topology.positions.at(topology.sink);
    std::map<NodeId, SynthSpec> out;
    for (NodeId n : topology.sensor_nodes()) {
        const auto& p = topology.positions.at(n);
        const double depth_m = std::abs(p.x - entrance.x);
        const double sun = 1500.0 * std::exp(-depth_m / 20.0);
        SynthSpec s;
        s.days = days;
        s.period_s = 30.0;
        s.base = 60.0 + 10.0 * static_cast<double>(n.value % 4) + sun;
        s.diurnal_amplitude = sun;
        s.noise_sigma = 0.3;
        s.step_events_per_day = 0.25;
        s.step_magnitude = 20.0;
        s.seed = node_seed(seed, n);
        s.node_id = n;
        out.emplace(n, s);
    }
    return out;
}

std::map<NodeId, SynthSpec> intel_light_specs(const topo::Topology& topology, int days, std::uint64_t seed) {
    std::map<NodeId, SynthSpec> out;
    for (NodeId n : topology.sensor_nodes()) {
        SynthSpec s;
        s.days = days;
        s.period_s = 31.0;
        s.base = 250.0 + 20.0 * static_cast<double>(n.value % 5);
        s.diurnal_amplitude = 200.0;
        s.noise_sigma = 2.0;
        s.step_events_per_day = 6.0;
        s.step_magnitude = 40.0;
        s.seed = node_seed(seed, n);
        s.node_id = n;
        out.emplace(n, s);
    }
    return out;
}

std::map<NodeId, SynthSpec> light_specs(Preset preset, const topo::Topology& topology, int days, std::uint64_t seed) {
    return preset == Preset::tunnel ? tunnel_light_specs(topology, days, seed) : intel_light_specs(topology, days, seed);
}

std::map<NodeId, SensorTrace> synthesize(const std::map<NodeId, SynthSpec>& specs) {
    std::vector<std::pair<NodeId, std::future<SensorTrace>>> jobs;
    for (const auto& [n, s] : specs)
        jobs.emplace_back(n, std::async(std::launch::async, [&s] { return synth_trace(s); }));
    std::map<NodeId, SensorTrace> out;
    for (auto& [n, f] : jobs) out.emplace(n, f.get());
    return out;
}

}  // namespace enwsn::scenario
