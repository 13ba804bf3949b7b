#pragma once

// One randomized replay-vs-weighted-model comparison: 5 sensor nodes plus a
// sink, 24 h of synthetic light, random feasible (configuration, software).

#include "event_replay.hpp"
#include "generators.hpp"

#include "enwsn/error.hpp"
#include "enwsn/power.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace oracle {

struct ReplayOutcome {
    int config_id = 0;
    enwsn::hw::Software software = enwsn::hw::Software::no_dbp;
    double max_rel_diff = 0.0;
    std::size_t events = 0;
};

inline ReplayOutcome replay_scenario(std::uint64_t seed) {
    using namespace enwsn;
    gen::Gen g(seed);
    auto topology = gen::random_topology(g, 5, 25.0);
    std::map<NodeId, SensorTrace> traces;
    const double period = g.chance(0.5) ? 30.0 : 31.0;
    for (auto n : topology.sensor_nodes()) {
        SynthSpec s;
        s.days = 1;
        s.period_s = period;
        s.base = g.uniform(20, 600);
        s.diurnal_amplitude = g.uniform(0, 400);
        s.noise_sigma = g.uniform(0, 20);
        s.step_events_per_day = g.uniform(0, 30);
        s.step_magnitude = g.uniform(0, 120);
        s.seed = g.raw();
        s.node_id = n;
        traces[n] = synth_trace(s);
    }
    const auto net = power::prepare_network(topology, traces, gen::random_params(g));
    const auto cat = hw::default_catalog();

    ReplayOutcome out;
    for (int attempt = 0; attempt < 200; ++attempt) {
        const auto config = hw::config_by_id(g.integer(1, 23)).with(static_cast<hw::Software>(g.integer(0, 2)));
        const auto cell = power::evaluate_cell(net, config, cat);
        if (!cell.feasible) continue;

        std::map<NodeId, std::vector<bool>> transmits;
        for (const auto& [n, tr] : net.traces) {
            auto& tx = transmits[n];
            tx.assign(tr.samples.size(), config.software == hw::Software::no_dbp);
            if (config.software != hw::Software::no_dbp)
                for (const auto& e : net.dbp.at(n).model_events) tx[e.index] = true;
        }
        const auto rep = replay(net.topology, net.tree.parent, net.traces, transmits, config, cat);
        out.config_id = config.id;
        out.software = config.software;
        for (const auto& np : cell.nodes) {
            const auto& r = rep.at(np.id);
            out.events += r.events;
            out.max_rel_diff = std::max(out.max_rel_diff, std::abs(r.avg_w - np.breakdown.total_w) / np.breakdown.total_w);
        }
        return out;
    }
    throw enwsn::Error("no feasible configuration drawn");
}

}  // namespace oracle
