#include "enwsn/harvest.hpp"

#include "enwsn/error.hpp"
#include "enwsn/text_io.hpp"

#include <cmath>

namespace enwsn::harvest {

void HarvestModel::check() const {
    const auto pts = curve.points();
    if (pts.size() < 2) throw ConfigError("harvest curve needs at least 2 breakpoints");
    if (pts.front().first != 0.0 || pts.front().second != 0.0) throw ConfigError("harvest curve must start at (0, 0)");
    if (!curve.non_decreasing()) throw ConfigError("harvest curve must be non-decreasing");
    if (!(efficiency > 0.0 && efficiency <= 1.0)) throw ConfigError("efficiency must be in (0, 1]");
    if (cells < 1) throw ConfigError("cells must be >= 1");
    if (!(area_scale > 0.0)) throw ConfigError("area_scale must be > 0");
}

PiecewiseLinear illustrative_indoor_pv_curve() {
    return PiecewiseLinear({
        {0.0, 0.0},
        {10.0, 2.0e-6},
        {50.0, 12.0e-6},
        {100.0, 26.0e-6},
        {200.0, 55.0e-6},
        {500.0, 140.0e-6},
        {1000.0, 280.0e-6},
        {5000.0, 1.3e-3},
        {10000.0, 2.4e-3},
    });
}

HarvestModel default_model() { return HarvestModel{illustrative_indoor_pv_curve()}; }

double harvest_power(double lux, const HarvestModel& model) {
    if (lux < 0.0) throw ValidationError("illuminance must be >= 0");
    return model.efficiency * model.cells * model.area_scale * model.curve(lux);
}

double mean_harvest(const SensorTrace& light, const HarvestModel& model) {
    const auto& s = light.samples;
    if (s.empty()) return 0.0;
    // Negative synthetic readings are treated as darkness.
    auto p = [&](double v) { return harvest_power(std::max(0.0, v), model); };
    if (s.size() == 1) return p(s.front().v);
    double energy = 0.0;
    double prev = p(s.front().v);
    for (std::size_t i = 1; i < s.size(); ++i) {
        const double cur = p(s[i].v);
        energy += 0.5 * (prev + cur) * (s[i].t - s[i - 1].t);
        prev = cur;
    }
    return energy / (s.back().t - s.front().t);
}

NeutralityReport neutrality(const std::map<NodeId, double>& node_powers_w,
                            const std::map<NodeId, SensorTrace>& light_traces, const HarvestModel& model) {
    model.check();
    std::string missing;
    for (const auto& [n, _] : node_powers_w)
        if (!light_traces.contains(n)) missing += (missing.empty() ? "" : ",") + n.str();
    if (!missing.empty()) throw ValidationError("no light trace for nodes: " + missing);

    HarvestModel single = model;
    single.cells = 1;

    NeutralityReport r;
    for (const auto& [n, consumed] : node_powers_w) {
        NodeNeutrality nn;
        nn.id = n;
        nn.consumed_w = consumed;
        nn.harvested_per_cell_w = mean_harvest(light_traces.at(n), single);
        nn.harvested_w = nn.harvested_per_cell_w * model.cells;
        nn.neutral = nn.harvested_w >= consumed;
        if (consumed <= 0.0) {
            nn.cells_needed = 1;
        } else if (nn.harvested_per_cell_w > 0.0) {
            nn.cells_needed = std::max(1L, static_cast<long>(std::ceil(consumed / nn.harvested_per_cell_w)));
        }
        if (nn.cells_needed) r.total_cells += *nn.cells_needed;
        else ++r.unsustainable_nodes;
        if (nn.neutral) ++r.neutral_nodes;
        r.nodes.push_back(nn);
    }
    return r;
}

std::string report_csv(const NeutralityReport& report) {
    std::string out = "node_id,consumed_uw,harvested_uw,neutral,cells_needed\n";
    for (const auto& n : report.nodes) {
        out += n.id.str() + ',' + text::format_sig(n.consumed_w * 1e6, 6) + ',' + text::format_sig(n.harvested_w * 1e6, 6) +
               ',' + (n.neutral ? "1" : "0") + ',' + (n.cells_needed ? std::to_string(*n.cells_needed) : "inf") + '\n';
    }
    out += "# total_cells=" + std::to_string(report.total_cells) + '\n';
    out += "# neutral_nodes=" + std::to_string(report.neutral_nodes) + '\n';
    out += "# unsustainable_nodes=" + std::to_string(report.unsustainable_nodes) + '\n';
    return out;
}

std::string series_dat(const NeutralityReport& report) {
    std::string out = "# index node_id consumed_uw harvested_uw\n";
    std::size_t i = 1;
    for (const auto& n : report.nodes) {
        // Log axes cannot show zero; clamp to a tiny positive value.
        const double c = std::max(n.consumed_w * 1e6, 1e-6);
        const double h = std::max(n.harvested_w * 1e6, 1e-6);
        out += std::to_string(i++) + ' ' + n.id.str() + ' ' + text::format_sig(c, 6) + ' ' + text::format_sig(h, 6) + '\n';
    }
    return out;
}

std::string gnuplot_script(const std::vector<std::pair<std::string, std::string>>& title_and_file,
                           const std::string& output_png) {
    std::string out = "set terminal pngcairo size 1000,500\n";
    out += "set output '" + output_png + "'\n";
    out += "set logscale y\nset xlabel 'node'\nset ylabel 'power [uW]'\nset key outside\n";
    out += "plot ";
    bool first = true;
    for (const auto& [title, file] : title_and_file) {
        if (!first) out += ", \\\n     ";
        first = false;
        out += "'" + file + "' using 1:3 with linespoints title '" + title + " consumed'";
    }
    if (!title_and_file.empty())
        out += ", \\\n     '" + title_and_file.front().second + "' using 1:4 with lines lw 2 title 'harvested'";
    out += '\n';
    return out;
}

}  // namespace enwsn::harvest
