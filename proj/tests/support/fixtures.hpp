#pragma once

#include "enwsn/power.hpp"
#include "enwsn/scenario.hpp"
#include "enwsn/text_io.hpp"

#include <string>

namespace fx {

inline enwsn::topo::Topology topology(const std::string& name) {
    return enwsn::topo::parse_topology(enwsn::text::read_file(std::string(ENWSN_FIXTURE_DIR "/") + name));
}

// Tunnel fixture with the synthetic light preset.
inline enwsn::power::Network tunnel_network(int days, std::uint64_t seed = 1) {
    auto t = topology("tunnel_topology.csv");
    auto traces = enwsn::scenario::synthesize(enwsn::scenario::tunnel_light_specs(t, days, seed));
    return enwsn::power::prepare_network(std::move(t), std::move(traces), enwsn::dbp::Params{});
}

}  // namespace fx
