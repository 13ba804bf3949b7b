#pragma once

// Discrete-event replay of a small network. Every sample of every node is
// turned into an actual event; transmitted packets are walked up the routing
// tree, producing a reception at each relay and an overhearing at every other
// in-range node. Each node then serves its events in time order (an event
// arriving while the node is busy waits), and the per-component power
// timeline is integrated segment by segment.

#include "enwsn/power.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <vector>

namespace oracle {

struct ReplayEvent {
    double t;
    enwsn::power::EventKind kind;
};

struct ReplayNode {
    double avg_w = 0.0;
    std::size_t events = 0;
    double spill_s = 0.0;  // service time running past the horizon
};

// `transmits[n][i]` says whether node n sends sample i. No link qualities.
inline std::map<enwsn::NodeId, ReplayNode> replay(const enwsn::topo::Topology& topology,
                                                  const std::map<enwsn::NodeId, enwsn::NodeId>& parent,
                                                  const std::map<enwsn::NodeId, enwsn::SensorTrace>& traces,
                                                  const std::map<enwsn::NodeId, std::vector<bool>>& transmits,
                                                  const enwsn::hw::HwConfig& config, const enwsn::hw::Catalog& catalog) {
    using enwsn::NodeId;
    using enwsn::power::EventKind;

    auto in_range = [&](NodeId a, NodeId b) {
        const auto& p = topology.positions.at(a);
        const auto& q = topology.positions.at(b);
        return std::hypot(p.x - q.x, p.y - q.y) <= topology.comm_range_m;
    };

    std::map<NodeId, std::vector<ReplayEvent>> queue;
    for (const auto& [n, tr] : traces) {
        const auto& tx = transmits.at(n);
        for (std::size_t i = 0; i < tr.samples.size(); ++i) {
            const double t = tr.samples[i].t;
            if (!tx[i]) {
                queue[n].push_back({t, EventKind::sample_only});
                continue;
            }
            queue[n].push_back({t, EventKind::sample_tx});
            NodeId u = n;
            while (true) {
                const NodeId p = parent.at(u);
                for (const auto& [x, _] : topology.positions)
                    if (x != u && x != p && x != topology.sink && in_range(u, x)) queue[x].push_back({t, EventKind::overhear});
                if (p == topology.sink) break;
                queue[p].push_back({t, EventKind::route});
                u = p;
            }
        }
    }

    const auto idle = enwsn::power::idle_powers(config, catalog);
    const double idle_total = idle.mcu + idle.radio + idle.mac + idle.wur_rx + idle.wur_tx + idle.mbs;
    std::map<EventKind, std::vector<enwsn::power::Phase>> phases;
    for (auto k : enwsn::power::kEventKinds) phases[k] = enwsn::power::event_phases(config, k, catalog);

    std::map<NodeId, ReplayNode> out;
    for (const auto& [n, tr] : traces) {
        auto& evs = queue[n];
        std::stable_sort(evs.begin(), evs.end(), [](const ReplayEvent& a, const ReplayEvent& b) { return a.t < b.t; });
        const double horizon = static_cast<double>(tr.samples.size()) * tr.period_s;
        double cursor = 0.0, energy = 0.0;
        for (const auto& e : evs) {
            const double start = std::max(cursor, e.t);
            energy += idle_total * (start - cursor);
            cursor = start;
            for (const auto& ph : phases[e.kind]) {
                const double w = ph.mcu_w.value_or(idle.mcu) + ph.radio_w.value_or(idle.radio) + idle.mac +
                                 ph.wur_rx_w.value_or(idle.wur_rx) + ph.wur_tx_w.value_or(idle.wur_tx) +
                                 ph.mbs_w.value_or(idle.mbs);
                energy += w * ph.duration_s;
                cursor += ph.duration_s;
            }
        }
        ReplayNode r;
        r.spill_s = std::max(0.0, cursor - horizon);
        if (cursor < horizon) energy += idle_total * (horizon - cursor);
        r.avg_w = energy / horizon;
        r.events = evs.size();
        out[n] = r;
    }
    return out;
}

}  // namespace oracle
