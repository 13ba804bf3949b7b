#include "cli.hpp"

#include "enwsn/dbp.hpp"
#include "enwsn/error.hpp"
#include "enwsn/harvest.hpp"
#include "enwsn/hw.hpp"
#include "enwsn/power.hpp"
#include "enwsn/scenario.hpp"
#include "enwsn/text_io.hpp"
#include "enwsn/topology.hpp"
#include "enwsn/trace.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace enwsn::cli {

namespace fs = std::filesystem;

namespace {

struct Inputs {
    std::string catalog;
    std::string topology;
    std::string link_quality;
    std::string traces;
    std::string preset;
    std::string calibration;
    std::string kind = "light";
    std::string dbp = "";
    std::string modes = "no-dbp,dbp,mbs";
    std::string out = ".";
    std::uint64_t seed = 1;
    int days = 47;
};

hw::Catalog load_catalog(std::string path) {
    if (path.empty()) {
        if (const char* env = std::getenv("ENWSN_CATALOG"); env && *env) path = env;
    }
    hw::Catalog cat = hw::default_catalog();
    if (!path.empty()) hw::apply_overrides(cat, text::read_file(path));
    cat.check();
    return cat;
}

topo::Topology load_topology(const Inputs& in) {
    if (in.topology.empty()) throw ConfigError("--topology is required");
    topo::Topology t = topo::parse_topology(text::read_file(in.topology));
    if (!in.link_quality.empty()) t.link_quality = topo::parse_link_quality(text::read_file(in.link_quality));
    t.check();
    return t;
}

std::vector<hw::Software> parse_modes(const std::string& s) {
    std::vector<hw::Software> out;
    for (auto part : text::split(s, ',')) {
        part = text::trim(part);
        if (part.empty()) continue;
        const hw::Software m = hw::parse_software(part);
        if (std::find(out.begin(), out.end(), m) != out.end()) throw ConfigError("mode listed twice: " + std::string(part));
        out.push_back(m);
    }
    if (out.empty()) throw ConfigError("--modes is empty");
    return out;
}

std::optional<Calibration> load_calibration(const std::string& path) {
    if (path.empty()) return std::nullopt;
    return Calibration::parse_csv(text::read_file(path));
}

SensorTrace read_trace(const std::string& path, SensorKind kind, NodeId id, const std::optional<Calibration>& cal) {
    TraceOptions opts;
    opts.kind = kind;
    opts.unit = cal ? Unit::raw : natural_unit(kind);
    opts.node_id = id;
    SensorTrace t = parse_trace(text::read_file(path), opts);
    if (cal) t = apply_calibration(t, *cal);
    return t;
}

std::map<NodeId, SensorTrace> load_traces(const Inputs& in, const topo::Topology& topology) {
    if (!in.traces.empty() && !in.preset.empty()) throw ConfigError("--traces and --preset are mutually exclusive");
    if (!in.preset.empty()) {
        if (in.days < 1) throw ConfigError("--days must be >= 1");
        return scenario::synthesize(scenario::light_specs(scenario::parse_preset(in.preset), topology, in.days, in.seed));
    }
    if (in.traces.empty()) throw ConfigError("one of --traces DIR or --preset is required");
    const SensorKind kind = parse_sensor_kind(in.kind);
    const auto cal = load_calibration(in.calibration);
    std::map<NodeId, SensorTrace> out;
    for (NodeId n : topology.sensor_nodes())
        out.emplace(n, read_trace((fs::path(in.traces) / (n.str() + ".csv")).string(), kind, n, cal));
    return out;
}

void write_out(const std::string& dir, const std::string& name, std::string_view content) {
    fs::create_directories(dir);
    text::write_file((fs::path(dir) / name).string(), content);
}

std::string pct(double fraction) { return text::format_fixed(100.0 * fraction, 2) + "%"; }

void add_network_opts(CLI::App* sub, Inputs& in) {
    sub->add_option("--topology", in.topology, "node positions CSV");
    sub->add_option("--link-quality", in.link_quality, "u,v,quality CSV");
    sub->add_option("--traces", in.traces, "directory of <node_id>.csv traces");
    sub->add_option("--preset", in.preset, "synthesize traces instead: tunnel | intel");
    sub->add_option("--days", in.days, "preset length in days")->capture_default_str();
    sub->add_option("--seed", in.seed, "preset seed")->capture_default_str();
    sub->add_option("--kind", in.kind, "sensor kind of --traces")->capture_default_str();
    sub->add_option("--calibration", in.calibration, "raw -> engineering unit curve CSV");
    sub->add_option("--dbp", in.dbp, "m=..,l=..,eps-abs=..,eps-rel=..,w=..");
    sub->add_option("--catalog", in.catalog, "hardware catalog overrides (falls back to $ENWSN_CATALOG)");
    sub->add_option("--out", in.out, "output directory")->capture_default_str();
}

int cmd_dbp(const Inputs& in, const std::string& trace_path, const std::string& format, std::ostream& out) {
    const dbp::Params params = dbp::parse_params(in.dbp);
    params.check();
    const SensorKind kind = parse_sensor_kind(in.kind);

    if (format == "intel") {
        IntelParseStats stats;
        const auto motes = parse_intel_lab(text::read_file(trace_path), kind, &stats);
        std::size_t samples = 0, tx = 0, skipped = 0;
        std::string csv = "node_id,samples,transmissions,suppression\n";
        for (const auto& [id, trace] : motes) {
            if (trace.samples.size() < params.m) {
                ++skipped;
                continue;
            }
            const dbp::Result r = dbp::run(trace, params);
            samples += r.samples_total;
            tx += r.transmissions;
            csv += id.str() + ',' + std::to_string(r.samples_total) + ',' + std::to_string(r.transmissions) + ',' +
                   text::format_sig(r.suppression, 8) + '\n';
        }
        if (samples == 0) throw InsufficientDataError("no mote has at least m samples");
        write_out(in.out, "dbp_motes.csv", csv);
        out << "records: " << stats.records << "\n";
        out << "dropped: " << stats.dropped_missing << " missing, " << stats.dropped_duplicate << " duplicate\n";
        out << "motes: " << motes.size() - skipped << " (" << skipped << " too short)\n";
        out << "samples: " << samples << "\n";
        out << "transmissions: " << tx << "\n";
        out << "suppression: " << pct(1.0 - static_cast<double>(tx) / static_cast<double>(samples)) << "\n";
        out << "params: " << dbp::to_string(params) << "\n";
        return kOk;
    }
    if (format != "csv") throw ConfigError("unknown --format '" + format + "' (expected csv or intel)");

    const SensorTrace trace = read_trace(trace_path, kind, NodeId{}, load_calibration(in.calibration));
    const dbp::Result r = dbp::run(trace, params);
    write_out(in.out, "dbp_events.csv", dbp::events_csv(r));
    out << "samples: " << r.samples_total << "\n";
    out << "transmissions: " << r.transmissions << "\n";
    out << "suppression: " << pct(r.suppression) << " (" << text::format_fixed(r.suppression, 6) << ")\n";
    out << "max_abs_error: " << text::format_sig(r.max_abs_error, 6) << "\n";
    out << "holes: " << trace.holes.size() << "\n";
    out << "params: " << dbp::to_string(params) << "\n";
    return kOk;
}

power::Network network_from(const Inputs& in) {
    const dbp::Params params = dbp::parse_params(in.dbp);
    params.check();
    topo::Topology topology = load_topology(in);
    auto traces = load_traces(in, topology);
    return power::prepare_network(std::move(topology), std::move(traces), params);
}

void print_network(const power::Network& net, std::ostream& out) {
    out << "nodes: " << net.topology.sensor_nodes().size() << " sensors + sink " << net.topology.sink.str() << "\n";
    out << "max depth: " << net.tree.max_depth() << "\n";
    out << "dbp suppression: " << pct(net.suppression()) << "\n";
    out << "dbp models/hour (network): " << text::format_sig(net.models_per_hour(), 6) << "\n\n";
}

int cmd_sweep(const Inputs& in, std::optional<int> only_id, bool per_node, std::ostream& out) {
    power::SweepOptions opts;
    opts.modes = parse_modes(in.modes);
    if (only_id) {
        hw::config_by_id(*only_id);
        opts.only_id = only_id;
    }
    opts.keep_nodes = per_node;
    const hw::Catalog catalog = load_catalog(in.catalog);
    const power::Network net = network_from(in);
    const power::SweepTable table = power::sweep(net, catalog, opts);

    write_out(in.out, "sweep.csv", power::sweep_csv(table));
    if (per_node) write_out(in.out, "nodes.csv", power::nodes_csv(table));
    print_network(net, out);
    out << power::sweep_text(table);

    for (const auto& c : table.cells)
        if (c.feasible) return kOk;
    return kRefused;
}

struct SustainOpts {
    int id = 11;
    std::string curve;
    double efficiency = 0.79;
    int cells = 1;
    double area_scale = 1.0;
};

int cmd_sustain(Inputs in, const SustainOpts& so, std::ostream& out, std::ostream& err) {
    in.kind = "light";
    const auto modes = parse_modes(in.modes);
    harvest::HarvestModel model = harvest::default_model();
    if (!so.curve.empty()) model.curve = PiecewiseLinear::parse_csv(text::read_file(so.curve));
    model.efficiency = so.efficiency;
    model.cells = so.cells;
    model.area_scale = so.area_scale;
    model.check();
    const hw::HwConfig base = hw::config_by_id(so.id);
    const hw::Catalog catalog = load_catalog(in.catalog);
    const power::Network net = network_from(in);
    print_network(net, out);

    std::vector<std::pair<std::string, std::string>> series;
    bool any = false;
    for (hw::Software mode : modes) {
        const power::Cell cell = power::evaluate_cell(net, base.with(mode), catalog);
        const std::string name(hw::to_string(mode));
        if (!cell.feasible) {
            err << "id " << so.id << " " << name << ": infeasible (" << cell.reason << ")\n";
            out << "id " << so.id << " " << name << ": infeasible\n";
            continue;
        }
        any = true;
        std::map<NodeId, double> consumed;
        for (const auto& np : cell.nodes) consumed.emplace(np.id, np.breakdown.total_w);
        const auto report = harvest::neutrality(consumed, net.traces, model);
        write_out(in.out, "sustain_" + name + ".csv", harvest::report_csv(report));
        write_out(in.out, "sustain_" + name + ".dat", harvest::series_dat(report));
        series.emplace_back(std::string(hw::label(mode)), "sustain_" + name + ".dat");
        out << "id " << so.id << " " << name << ": avg " << text::format_sig(cell.avg_w * 1e6, 5) << " uW, cells "
            << report.total_cells << ", neutral " << report.neutral_nodes << "/" << report.nodes.size()
            << ", unsustainable " << report.unsustainable_nodes << "\n";
    }
    if (!any) return kRefused;
    write_out(in.out, "sustain.gp", harvest::gnuplot_script(series, "sustain.png"));
    return kOk;
}

struct SynthOpts {
    SynthSpec spec;
    std::string kind = "light";
    unsigned node = 1;
};

int cmd_synth(const Inputs& in, SynthOpts so, std::ostream& out) {
    if (!in.preset.empty()) {
        const topo::Topology topology = load_topology(in);
        const auto traces = load_traces(in, topology);
        for (const auto& [id, t] : traces) write_out(in.out, id.str() + ".csv", serialize_trace(t));
        out << "wrote " << traces.size() << " traces to " << in.out << "\n";
        return kOk;
    }
    so.spec.kind = parse_sensor_kind(so.kind);
    so.spec.node_id = NodeId{so.node};
    so.spec.seed = in.seed;
    so.spec.days = in.days;
    if (so.spec.days < 1 || !(so.spec.period_s > 0.0)) throw ConfigError("--days must be >= 1 and --period > 0");
    const SensorTrace t = synth_trace(so.spec);
    write_out(in.out, so.spec.node_id.str() + ".csv", serialize_trace(t));
    out << "wrote " << t.samples.size() << " samples to " << (fs::path(in.out) / (so.spec.node_id.str() + ".csv")).string()
        << "\n";
    return kOk;
}

int cmd_topo(const Inputs& in, bool write_tree, std::ostream& out) {
    const topo::Topology topology = load_topology(in);
    const topo::CollectionTree tree = topo::build_tree(topology);
    out << "nodes: " << topology.sensor_nodes().size() << " sensors + sink " << topology.sink.str() << "\n";
    out << "routing: " << (topology.link_quality ? "min-etx" : "min-hop") << "\n";
    out << "max depth: " << tree.max_depth() << "\n";
    out << "depth histogram:\n";
    for (const auto& [d, count] : tree.depth_histogram()) out << "  " << d << ": " << count << "\n";
    out << "subtree sizes:\n";
    for (const auto& [n, s] : tree.subtree_size)
        if (n != tree.sink) out << "  " << n.str() << ": " << s << "\n";
    if (write_tree) write_out(in.out, "tree.csv", topo::tree_csv(tree));
    return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Sensor network energy simulator: DBP traffic, hardware power sweep, harvesting neutrality", "enwsn"};
    app.require_subcommand(1);

    Inputs in;

    auto* dbp_cmd = app.add_subcommand("dbp", "run DBP over one trace and report suppression");
    std::string trace_path, format = "csv";
    dbp_cmd->add_option("trace", trace_path, "trace file (t,v CSV or Intel lab data)")->required();
    dbp_cmd->add_option("--format", format, "csv | intel")->capture_default_str();
    dbp_cmd->add_option("--kind", in.kind, "light | temperature | humidity")->capture_default_str();
    dbp_cmd->add_option("--calibration", in.calibration, "raw -> engineering unit curve CSV");
    dbp_cmd->add_option("--dbp", in.dbp, "m=..,l=..,eps-abs=..,eps-rel=..,w=..");
    dbp_cmd->add_option("--out", in.out, "output directory")->capture_default_str();

    auto* sweep_cmd = app.add_subcommand("sweep", "power of every hardware configuration and software mode");
    add_network_opts(sweep_cmd, in);
    std::optional<int> only_id;
    bool per_node = false;
    sweep_cmd->add_option("--modes", in.modes, "comma list of no-dbp, dbp, mbs")->capture_default_str();
    sweep_cmd->add_option("--only-id", only_id, "evaluate a single configuration row");
    sweep_cmd->add_flag("--per-node", per_node, "also write nodes.csv");

    auto* sustain_cmd = app.add_subcommand("sustain", "energy neutrality of one configuration under indoor PV");
    add_network_opts(sustain_cmd, in);
    SustainOpts so;
    sustain_cmd->add_option("--modes", in.modes, "comma list of no-dbp, dbp, mbs");
    sustain_cmd->add_option("--id", so.id, "configuration row")->capture_default_str();
    sustain_cmd->add_option("--curve", so.curve, "lux,W breakpoints CSV");
    sustain_cmd->add_option("--efficiency", so.efficiency)->capture_default_str();
    sustain_cmd->add_option("--cells", so.cells)->capture_default_str();
    sustain_cmd->add_option("--area-scale", so.area_scale)->capture_default_str();

    auto* synth_cmd = app.add_subcommand("synth", "generate synthetic traces");
    SynthOpts sy;
    synth_cmd->add_option("--preset", in.preset, "tunnel | intel (needs --topology)");
    synth_cmd->add_option("--topology", in.topology, "node positions CSV");
    synth_cmd->add_option("--days", in.days)->capture_default_str();
    synth_cmd->add_option("--seed", in.seed)->capture_default_str();
    synth_cmd->add_option("--out", in.out, "output directory")->capture_default_str();
    synth_cmd->add_option("--kind", sy.kind)->capture_default_str();
    synth_cmd->add_option("--node", sy.node, "node id of a single trace")->capture_default_str();
    synth_cmd->add_option("--period", sy.spec.period_s)->capture_default_str();
    synth_cmd->add_option("--base", sy.spec.base)->capture_default_str();
    synth_cmd->add_option("--amplitude", sy.spec.diurnal_amplitude)->capture_default_str();
    synth_cmd->add_option("--sigma", sy.spec.noise_sigma)->capture_default_str();
    synth_cmd->add_option("--steps-per-day", sy.spec.step_events_per_day)->capture_default_str();
    synth_cmd->add_option("--step-magnitude", sy.spec.step_magnitude)->capture_default_str();

    auto* topo_cmd = app.add_subcommand("topo", "routing tree summary");
    topo_cmd->add_option("--topology", in.topology, "node positions CSV")->required();
    topo_cmd->add_option("--link-quality", in.link_quality, "u,v,quality CSV");
    topo_cmd->add_option("--out", in.out, "write tree.csv here");

    auto* catalog_cmd = app.add_subcommand("catalog", "print the effective hardware catalog");
    catalog_cmd->add_option("--catalog", in.catalog, "overrides (falls back to $ENWSN_CATALOG)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (*dbp_cmd) return cmd_dbp(in, trace_path, format, out);
        if (*sweep_cmd) return cmd_sweep(in, only_id, per_node, out);
        if (*sustain_cmd) {
            if (sustain_cmd->count("--modes") == 0) in.modes = "dbp,mbs";
            return cmd_sustain(in, so, out, err);
        }
        if (*synth_cmd) return cmd_synth(in, sy, out);
        if (*topo_cmd) return cmd_topo(in, topo_cmd->count("--out") > 0, out);
        if (*catalog_cmd) {
            out << hw::dump_catalog(load_catalog(in.catalog));
            return kOk;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}

}  // namespace enwsn::cli
