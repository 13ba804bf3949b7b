#include "enwsn/power.hpp"

#include "enwsn/error.hpp"
#include "enwsn/text_io.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

namespace enwsn::power {

using hw::HwConfig;
using hw::Software;

std::string_view to_string(EventKind k) {
    switch (k) {
        case EventKind::overhear: return "overhear";
        case EventKind::route: return "route";
        case EventKind::sample_tx: return "sample_tx";
        case EventKind::sample_only: return "sample_only";
    }
    return "?";
}

EventKind parse_event_kind(std::string_view s) {
    for (auto k : kEventKinds)
        if (to_string(k) == s) return k;
    throw ConfigError("unknown event kind '" + std::string(s) + "'");
}

namespace {

bool uses_frame_filtering(const HwConfig& c, const hw::Catalog& cat) {
    return c.radio == hw::RadioIdle::lpm2_ff && cat.radio.frame_filtering;
}

}  // namespace

IdlePowers idle_powers(const HwConfig& config, const hw::Catalog& catalog) {
    IdlePowers p;
    p.mcu = catalog.mcu.idle_w(config.mcu);
    if (hw::radio_power_gated(config)) {
        p.radio = catalog.radio.deep_off_w;
    } else {
        p.radio = config.radio == hw::RadioIdle::lpm1 ? catalog.radio.lpm1_w : catalog.radio.lpm2_w;
    }
    if (const auto kind = hw::wur_kind(config.wakeup)) {
        const auto& w = catalog.wur(*kind);
        p.wur_rx = w.listen_w;
        p.wur_tx = w.tx_standby_w;
    } else {
        p.mac = catalog.radio.rx_w * catalog.mac.channel_check_s / catalog.mac.contikimac_interval_s;
    }
    if (config.software == Software::mbs) p.mbs = catalog.mbs.sleep_w;
    return p;
}

double floor_power(const HwConfig& config, const hw::Catalog& catalog) { return idle_powers(config, catalog).total(); }

double packet_airtime(const hw::Catalog& catalog) {
    if (!(catalog.radio.phy_rate_bps > 0.0)) throw ConfigError("phy rate must be > 0");
    return 8.0 * catalog.radio.frame_bytes / catalog.radio.phy_rate_bps;
}

std::vector<Phase> event_phases(const HwConfig& config, EventKind kind, const hw::Catalog& catalog,
                                double link_tx_multiplier) {
    const auto& mcu = catalog.mcu;
    const double active = mcu.active_processing_w;
    const double airtime = packet_airtime(catalog);
    const double tx_w = catalog.radio.tx_w();
    const auto wur = hw::wur_kind(config.wakeup);
    const bool addressed = hw::addressed(config.wakeup);
    const bool mbs = config.software == Software::mbs;

    std::vector<Phase> out;
    auto wake = [&] { out.push_back({.duration_s = mcu.wake_s(config.mcu), .mcu_w = active}); };
    auto transmit = [&] {
        if (wur) {
            const auto& w = catalog.wur(*wur);
            out.push_back({.duration_s = w.trigger_s(addressed) * link_tx_multiplier, .mcu_w = active,
                           .wur_tx_w = w.tx_active_w});
        } else {
            out.push_back({.duration_s = catalog.mac.strobe_expected_s() * link_tx_multiplier, .mcu_w = active,
                           .radio_w = tx_w});
        }
        out.push_back({.duration_s = airtime * link_tx_multiplier, .mcu_w = active, .radio_w = tx_w});
    };
    auto decode = [&](bool addressed_mode) {
        if (wur) {
            const auto& w = catalog.wur(*wur);
            out.push_back({.duration_s = w.trigger_s(addressed_mode), .wur_rx_w = w.decode_w});
        }
    };
    auto receive_full = [&] {
        wake();
        out.push_back({.duration_s = airtime, .mcu_w = active, .radio_w = catalog.radio.rx_w});
    };
    auto sample = [&] {
        if (mbs) {
            out.push_back({.duration_s = catalog.mbs.sample_active_s, .mbs_w = catalog.mbs.active_w});
        } else {
            wake();
            out.push_back({.duration_s = mcu.sample_s, .mcu_w = active});
        }
    };

    switch (kind) {
        case EventKind::sample_only:
            sample();
            break;
        case EventKind::sample_tx:
            sample();
            if (mbs) wake();
            transmit();
            break;
        case EventKind::route:
            decode(addressed);
            receive_full();
            transmit();
            break;
        case EventKind::overhear:
            if (wur && addressed) {
                decode(true);
            } else if (uses_frame_filtering(config, catalog)) {
                decode(false);
                out.push_back({.duration_s = catalog.radio.header_s, .radio_w = catalog.radio.rx_w});
            } else {
                decode(false);
                receive_full();
            }
            break;
    }
    return out;
}

EventEnergy event_energy(const HwConfig& config, EventKind kind, const hw::Catalog& catalog,
                         double link_tx_multiplier) {
    const IdlePowers idle = idle_powers(config, catalog);
    EventEnergy e;
    for (const auto& ph : event_phases(config, kind, catalog, link_tx_multiplier)) {
        auto add = [&](const std::optional<double>& p, double idle_w) {
            if (!p) return;
            e.energy_j += *p * ph.duration_s;
            e.excess_j += (*p - idle_w) * ph.duration_s;
        };
        add(ph.mcu_w, idle.mcu);
        add(ph.radio_w, idle.radio);
        add(ph.wur_rx_w, idle.wur_rx);
        add(ph.wur_tx_w, idle.wur_tx);
        add(ph.mbs_w, idle.mbs);
        e.busy_s += ph.duration_s;
    }
    return e;
}

double OperatingConditionRates::rate(EventKind k) const {
    switch (k) {
        case EventKind::overhear: return overhear_per_s;
        case EventKind::route: return route_per_s;
        case EventKind::sample_tx: return sample_tx_per_s;
        case EventKind::sample_only: return sample_only_per_s;
    }
    return 0.0;
}

OperatingConditionRates condition_rates(const topo::NodeLoads& loads, const dbp::Result* dbp_result,
                                        double sampling_period_s, Software software) {
    if (!(sampling_period_s > 0.0)) throw ConfigError("sampling period must be > 0");
    OperatingConditionRates r;
    const double per_sample = 1.0 / sampling_period_s;
    if (software == Software::no_dbp) {
        r.sample_tx_per_s = per_sample;
        r.sample_only_per_s = 0.0;
    } else {
        if (!dbp_result) throw ConfigError("software mode " + std::string(hw::to_string(software)) + " needs a DBP result");
        const double horizon = dbp_result->horizon_s > 0.0
                                   ? dbp_result->horizon_s
                                   : static_cast<double>(dbp_result->samples_total) * sampling_period_s;
        r.sample_tx_per_s = static_cast<double>(dbp_result->transmissions) / horizon;
        r.sample_only_per_s = std::max(0.0, per_sample - r.sample_tx_per_s);
    }
    r.route_per_s = loads.intended_rx_per_s;
    r.overhear_per_s = loads.overheard_per_s;
    r.link_tx_multiplier = loads.link_tx_multiplier;
    return r;
}

hw::Workload workload(const HwConfig& config, const OperatingConditionRates& rates, const hw::Catalog& catalog) {
    hw::Workload w;
    w.sampling_period_s = rates.sampling_period_s();
    for (auto k : kEventKinds) {
        const double busy = event_energy(config, k, catalog, rates.link_tx_multiplier).busy_s;
        w.events.push_back({rates.rate(k), busy});
    }
    return w;
}

PowerBreakdown node_power(const HwConfig& config, const OperatingConditionRates& rates, const hw::Catalog& catalog) {
    const hw::Workload load = workload(config, rates, catalog);
    if (const auto verdict = hw::feasible(config, load, catalog); !verdict.ok) throw InfeasibleError(verdict.reason);

    PowerBreakdown b;
    b.floor_w = floor_power(config, catalog);
    b.total_w = b.floor_w;
    b.utilization = load.utilization();
    for (std::size_t i = 0; i < kEventKinds.size(); ++i) {
        const auto k = kEventKinds[i];
        const double c = rates.rate(k) * event_energy(config, k, catalog, rates.link_tx_multiplier).excess_j;
        b.contribution_w[i] = c;
        b.total_w += c;
    }
    return b;
}

double Network::suppression() const {
    std::size_t tx = 0, samples = 0;
    for (const auto& [_, r] : dbp) {
        tx += r.transmissions;
        samples += r.samples_total;
    }
    return samples ? 1.0 - static_cast<double>(tx) / static_cast<double>(samples) : 0.0;
}

double Network::models_per_hour() const {
    double total = 0.0;
    for (const auto& [_, r] : dbp) total += dbp::traffic_rate(r, r.horizon_s);
    return total;
}

Network prepare_network(topo::Topology topology, std::map<NodeId, SensorTrace> traces, const dbp::Params& params) {
    params.check();
    Network net;
    net.tree = topo::build_tree(topology);
    net.params = params;
    std::string missing;
    for (NodeId n : topology.sensor_nodes()) {
        auto it = traces.find(n);
        if (it == traces.end()) {
            missing += (missing.empty() ? "" : ",") + n.str();
            continue;
        }
        net.traces.emplace(n, std::move(it->second));
    }
    if (!missing.empty()) throw ValidationError("no trace for nodes: " + missing);
    net.topology = std::move(topology);

    // Independent per-node runs; results are collected in node order.
    std::vector<std::pair<NodeId, std::future<dbp::Result>>> jobs;
    for (const auto& [n, tr] : net.traces)
        jobs.emplace_back(n, std::async(std::launch::async, [&tr, &params] { return dbp::run(tr, params); }));
    for (auto& [n, f] : jobs) net.dbp.emplace(n, f.get());
    return net;
}

std::map<NodeId, double> own_tx_rates(const Network& net, Software software) {
    std::map<NodeId, double> rates;
    for (const auto& [n, tr] : net.traces) {
        if (software == Software::no_dbp) {
            rates[n] = 1.0 / tr.period_s;
        } else {
            const auto& r = net.dbp.at(n);
            rates[n] = static_cast<double>(r.transmissions) / r.horizon_s;
        }
    }
    return rates;
}

Cell evaluate_cell(const Network& net, const HwConfig& config, const hw::Catalog& catalog) {
    Cell cell;
    cell.config = config;
    if (config.software == Software::mbs && static_cast<double>(net.params.m) > catalog.mbs.max_buffered_samples) {
        cell.reason = "window exceeds sensing-peripheral buffer";
        return cell;
    }
    const auto loads = topo::node_loads(net.tree, net.topology, own_tx_rates(net, config.software));
    double sum = 0.0;
    for (const auto& [n, tr] : net.traces) {
        const dbp::Result* r = config.software == Software::no_dbp ? nullptr : &net.dbp.at(n);
        const auto rates = condition_rates(loads.at(n), r, tr.period_s, config.software);
        try {
            const auto b = node_power(config, rates, catalog);
            sum += b.total_w;
            cell.nodes.push_back({n, b});
        } catch (const InfeasibleError& e) {
            cell.reason = e.what();
            cell.detail = "node " + n.str();
            cell.nodes.clear();
            return cell;
        }
    }
    cell.feasible = true;
    cell.avg_w = sum / static_cast<double>(net.traces.size());
    return cell;
}

const Cell* SweepTable::find(int id, Software s) const {
    for (const auto& c : cells)
        if (c.config.id == id && c.config.software == s) return &c;
    return nullptr;
}

SweepTable sweep(const Network& net, const hw::Catalog& catalog, const SweepOptions& options) {
    catalog.check();
    SweepTable table;
    table.modes = options.modes;

    const Cell baseline = evaluate_cell(net, hw::config_by_id(1).with(Software::no_dbp), catalog);
    table.baseline_w = baseline.feasible ? baseline.avg_w : std::numeric_limits<double>::quiet_NaN();

    for (const auto& row : hw::enumerate_configs()) {
        if (options.only_id && row.id != *options.only_id) continue;
        for (const auto mode : options.modes) {
            Cell c = evaluate_cell(net, row.with(mode), catalog);
            if (c.feasible) c.ratio = table.baseline_w / c.avg_w;
            if (!options.keep_nodes) c.nodes.clear();
            table.cells.push_back(std::move(c));
        }
    }
    if (options.only_id && table.cells.empty()) throw ConfigError("no configuration with id " + std::to_string(*options.only_id));
    return table;
}

namespace {

std::string uw(double w) { return text::format_sig(w * 1e6, 6); }

std::string pretty_uw(double w) {
    const double v = w * 1e6;
    if (v >= 100.0) return text::format_fixed(v, 0);
    if (v >= 10.0) return text::format_fixed(v, 1);
    return text::format_fixed(v, 2);
}

std::string pretty_ratio(double r) {
    if (r >= 100.0) return text::format_fixed(r, 0) + "x";
    return text::format_fixed(r, 1) + "x";
}

std::string pad(std::string s, std::size_t width, bool right = true) {
    if (s.size() >= width) return s;
    const std::string fill(width - s.size(), ' ');
    return right ? fill + s : s + fill;
}

}  // namespace

std::string sweep_csv(const SweepTable& table) {
    std::string out = "id,mcu,radio,wakeup,software,avg_uw,ratio,status\n";
    for (const auto& c : table.cells) {
        out += std::to_string(c.config.id) + ',' + std::string(hw::to_string(c.config.mcu)) + ',' +
               std::string(hw::to_string(c.config.radio)) + ',' + std::string(hw::to_string(c.config.wakeup)) + ',' +
               std::string(hw::to_string(c.config.software)) + ',';
        if (c.feasible) {
            out += uw(c.avg_w) + ',' + text::format_sig(c.ratio, 6) + ",ok\n";
        } else {
            out += ",,infeasible: " + c.reason + '\n';
        }
    }
    return out;
}

std::string sweep_text(const SweepTable& table) {
    std::vector<std::string> reasons;
    auto note = [&](const std::string& reason) {
        auto it = std::find(reasons.begin(), reasons.end(), reason);
        if (it == reasons.end()) {
            reasons.push_back(reason);
            it = reasons.end() - 1;
        }
        return std::string(1, static_cast<char>('a' + (it - reasons.begin())));
    };

    std::string out = pad("ID", 3) + "  " + pad("MCU", 8, false) + pad("Transceiver", 12, false) + pad("Wake-Up", 8, false);
    for (auto m : table.modes) out += " | " + pad(std::string(hw::label(m)), 8) + " [uW]" + pad("Ratio", 8);
    out += '\n';
    out += std::string(out.size() - 1, '-') + '\n';

    int last_id = -1;
    std::string line;
    auto flush = [&] {
        if (!line.empty()) out += line + '\n';
        line.clear();
    };
    for (const auto& c : table.cells) {
        if (c.config.id != last_id) {
            flush();
            last_id = c.config.id;
            line = pad(std::to_string(c.config.id), 3) + "  " + pad(std::string(hw::label(c.config.mcu)), 8, false) +
                   pad(std::string(hw::label(c.config.radio)), 12, false) +
                   pad(std::string(hw::label(c.config.wakeup)), 8, false);
        }
        if (c.feasible) {
            line += " | " + pad(pretty_uw(c.avg_w), 13) + pad(pretty_ratio(c.ratio), 8);
        } else {
            line += " | " + pad("-[" + note(c.reason) + "]", 13) + pad("-", 8);
        }
    }
    flush();
    if (!reasons.empty()) {
        out += '\n';
        for (std::size_t i = 0; i < reasons.size(); ++i)
            out += "[" + std::string(1, static_cast<char>('a' + i)) + "] " + reasons[i] + '\n';
    }
    return out;
}

std::string nodes_csv(const SweepTable& table) {
    std::string out = "id,software,node_id,floor_uw,overhear_uw,route_uw,sample_tx_uw,sample_only_uw,total_uw,utilization\n";
    for (const auto& c : table.cells) {
        for (const auto& n : c.nodes) {
            const auto& b = n.breakdown;
            out += std::to_string(c.config.id) + ',' + std::string(hw::to_string(c.config.software)) + ',' + n.id.str() +
                   ',' + uw(b.floor_w);
            for (auto k : kEventKinds) out += ',' + uw(b.contribution(k));
            out += ',' + uw(b.total_w) + ',' + text::format_sig(b.utilization, 6) + '\n';
        }
    }
    return out;
}

Savings mbs_savings(const std::vector<NodePower>& dbp_nodes, const std::vector<NodePower>& mbs_nodes) {
    if (dbp_nodes.empty() || dbp_nodes.size() != mbs_nodes.size())
        throw ValidationError("mbs_savings: node sets differ or are empty");
    std::map<NodeId, double> mbs;
    for (const auto& n : mbs_nodes) mbs[n.id] = n.breakdown.total_w;
    Savings s{std::numeric_limits<double>::infinity(), 0.0, -std::numeric_limits<double>::infinity()};
    for (const auto& n : dbp_nodes) {
        const auto it = mbs.find(n.id);
        if (it == mbs.end()) throw ValidationError("mbs_savings: node " + n.id.str() + " missing from MBS set");
        const double pct = 100.0 * (1.0 - it->second / n.breakdown.total_w);
        s.min_pct = std::min(s.min_pct, pct);
        s.max_pct = std::max(s.max_pct, pct);
        s.avg_pct += pct;
    }
    s.avg_pct /= static_cast<double>(dbp_nodes.size());
    return s;
}

Savings mbs_savings(const SweepTable& table, int config_id) {
    const Cell* d = table.find(config_id, Software::dbp);
    const Cell* m = table.find(config_id, Software::mbs);
    if (!d || !m || !d->feasible || !m->feasible)
        throw ValidationError("mbs_savings: configuration " + std::to_string(config_id) + " lacks feasible DBP and MBS cells");
    return mbs_savings(d->nodes, m->nodes);
}

}  // namespace enwsn::power
