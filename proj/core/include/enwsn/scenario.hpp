#pragma once

#include "enwsn/topology.hpp"
#include "enwsn/trace.hpp"

#include <cstdint>
#include <map>
#include <string_view>

// Synthetic stand-ins for the two deployments' light traces. Shapes only:
// a diurnal cycle whose amplitude depends on where the node sits, a lamp
// floor, sensor noise and occasional level shifts.
namespace enwsn::scenario {

enum class Preset { tunnel, intel };

Preset parse_preset(std::string_view s);

// Road tunnel, 30 s sampling. Sunlight decays with distance from the sink
// (placed at the entrance); deep nodes see only the lamps.
std::map<NodeId, SynthSpec> tunnel_light_specs(const topo::Topology& topology, int days, std::uint64_t seed);

// Office lab, 31 s sampling. Everyone sees daylight plus frequent
// human-driven level shifts.
std::map<NodeId, SynthSpec> intel_light_specs(const topo::Topology& topology, int days, std::uint64_t seed);

std::map<NodeId, SynthSpec> light_specs(Preset preset, const topo::Topology& topology, int days, std::uint64_t seed);

std::map<NodeId, SensorTrace> synthesize(const std::map<NodeId, SynthSpec>& specs);

}  // namespace enwsn::scenario
