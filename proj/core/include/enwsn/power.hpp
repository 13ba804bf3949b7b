#pragma once

#include "enwsn/dbp.hpp"
#include "enwsn/hw.hpp"
#include "enwsn/topology.hpp"
#include "enwsn/trace.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace enwsn::power {

// Operating conditions other than waiting, which takes the residual time.
enum class EventKind { overhear, route, sample_tx, sample_only };
inline constexpr std::array<EventKind, 4> kEventKinds = {EventKind::overhear, EventKind::route, EventKind::sample_tx,
                                                         EventKind::sample_only};
std::string_view to_string(EventKind k);
EventKind parse_event_kind(std::string_view s);

// Continuous draw of each component while the node waits.
struct IdlePowers {
    double mcu = 0.0;
    double radio = 0.0;
    double mac = 0.0;  // ContikiMAC channel checks, averaged; never replaced by an event
    double wur_rx = 0.0;
    double wur_tx = 0.0;
    double mbs = 0.0;

    double total() const { return mcu + radio + mac + wur_rx + wur_tx + mbs; }
};

IdlePowers idle_powers(const hw::HwConfig& config, const hw::Catalog& catalog);

// Sum of the idle draws: MCU low-power mode, transceiver idle state (or the
// power-gated floor behind a wake-up receiver), ContikiMAC channel checks when
// there is no wake-up receiver, WuR listening and transmitter standby, and the
// sensing peripheral's sleep draw under MBS.
double floor_power(const hw::HwConfig& config, const hw::Catalog& catalog);

// 8 * frame_bytes / phy_rate_bps.
double packet_airtime(const hw::Catalog& catalog);

// One stretch of an event during which the listed components draw the given
// power; unlisted components stay at their idle draw.
struct Phase {
    double duration_s = 0.0;
    std::optional<double> mcu_w;
    std::optional<double> radio_w;
    std::optional<double> wur_rx_w;
    std::optional<double> wur_tx_w;
    std::optional<double> mbs_w;
};

// Phase sequence of one occurrence of `kind`. Transmissions are scaled by the
// expected number of link-level attempts.
std::vector<Phase> event_phases(const hw::HwConfig& config, EventKind kind, const hw::Catalog& catalog,
                                double link_tx_multiplier = 1.0);

struct EventEnergy {
    double energy_j = 0.0;  // drawn by the components the event activates
    double busy_s = 0.0;    // time the node is unavailable
    double excess_j = 0.0;  // energy above what those components would draw idle over busy_s
};

EventEnergy event_energy(const hw::HwConfig& config, EventKind kind, const hw::Catalog& catalog,
                         double link_tx_multiplier = 1.0);

struct OperatingConditionRates {
    double overhear_per_s = 0.0;
    double route_per_s = 0.0;
    double sample_tx_per_s = 0.0;
    double sample_only_per_s = 0.0;
    double link_tx_multiplier = 1.0;

    double rate(EventKind k) const;
    double sampling_period_s() const { return 1.0 / (sample_tx_per_s + sample_only_per_s); }
};

// Throws ConfigError if software is dbp/mbs and no DBP result is supplied.
OperatingConditionRates condition_rates(const topo::NodeLoads& loads, const dbp::Result* dbp_result,
                                        double sampling_period_s, hw::Software software);

hw::Workload workload(const hw::HwConfig& config, const OperatingConditionRates& rates, const hw::Catalog& catalog);

struct PowerBreakdown {
    double floor_w = 0.0;
    std::array<double, 4> contribution_w{};  // indexed like kEventKinds
    double total_w = 0.0;
    double utilization = 0.0;

    double contribution(EventKind k) const { return contribution_w[static_cast<std::size_t>(k)]; }
};

// floor + sum over conditions of rate * excess energy. Throws InfeasibleError
// with the feasibility reason when the configuration cannot run the workload.
PowerBreakdown node_power(const hw::HwConfig& config, const OperatingConditionRates& rates, const hw::Catalog& catalog);

// Everything a sweep needs, prepared once: routing tree and per-node DBP runs.
struct Network {
    topo::Topology topology;
    topo::CollectionTree tree;
    std::map<NodeId, SensorTrace> traces;  // sensor nodes only
    std::map<NodeId, dbp::Result> dbp;
    dbp::Params params;

    double suppression() const;     // network-wide 1 - transmissions/samples
    double models_per_hour() const;  // network aggregate DBP traffic
};

// Throws ValidationError when a sensor node lacks a trace. Traces keyed by
// the sink are ignored.
Network prepare_network(topo::Topology topology, std::map<NodeId, SensorTrace> traces, const dbp::Params& params);

// Own packet rate of every sensor node under a software mode.
std::map<NodeId, double> own_tx_rates(const Network& net, hw::Software software);

struct NodePower {
    NodeId id;
    PowerBreakdown breakdown;
};

struct Cell {
    hw::HwConfig config;
    bool feasible = false;
    std::string reason;   // feasibility reason when infeasible
    std::string detail;   // e.g. offending node
    double avg_w = 0.0;   // mean over sensor nodes
    double ratio = 0.0;   // baseline / avg
    std::vector<NodePower> nodes;
};

struct SweepOptions {
    std::vector<hw::Software> modes = {hw::Software::no_dbp, hw::Software::dbp, hw::Software::mbs};
    std::optional<int> only_id;
    bool keep_nodes = true;
};

struct SweepTable {
    std::vector<Cell> cells;  // row-major: config id ascending, then modes in option order
    std::vector<hw::Software> modes;
    double baseline_w = 0.0;  // ID 1, no-DBP

    const Cell* find(int id, hw::Software s) const;
};

// Evaluates one (config, software) cell; infeasibility is reported in the cell.
Cell evaluate_cell(const Network& net, const hw::HwConfig& config, const hw::Catalog& catalog);

SweepTable sweep(const Network& net, const hw::Catalog& catalog, const SweepOptions& options = {});

// `id,mcu,radio,wakeup,software,avg_uw,ratio,status`.
std::string sweep_csv(const SweepTable& table);
// Aligned text table with one column group per software mode; infeasible
// cells print "-" with a footnoted reason.
std::string sweep_text(const SweepTable& table);
// `id,software,node_id,floor_uw,overhear_uw,route_uw,sample_tx_uw,sample_only_uw,total_uw,utilization`.
std::string nodes_csv(const SweepTable& table);

struct Savings {
    double min_pct = 0.0;
    double avg_pct = 0.0;
    double max_pct = 0.0;
};

// 100 * (1 - P_mbs / P_dbp) per node, aggregated. Nodes are matched by id.
// Throws ValidationError when the node sets differ or are empty.
Savings mbs_savings(const std::vector<NodePower>& dbp_nodes, const std::vector<NodePower>& mbs_nodes);
// Same for one configuration row of a sweep; throws if either cell is infeasible.
Savings mbs_savings(const SweepTable& table, int config_id);

}  // namespace enwsn::power
