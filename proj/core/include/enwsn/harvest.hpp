#pragma once

#include "enwsn/node_id.hpp"
#include "enwsn/piecewise_linear.hpp"
#include "enwsn/trace.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace enwsn::harvest {

struct HarvestModel {
    PiecewiseLinear curve;     // lux -> cell output power (W)
    double efficiency = 0.79;  // charging efficiency of the harvesting front end
    int cells = 1;
    double area_scale = 1.0;   // fraction of a full-size cell

    // Throws ConfigError: curve must start at (0, 0) and be non-decreasing;
    // 0 < efficiency <= 1; cells >= 1; area_scale > 0.
    void check() const;
};

// Illustrative lux -> W curve for a palm-sized amorphous-silicon indoor cell
// under fluorescent light. Not a datasheet transcription; shipped as
// fixtures/am1816_illustrative.csv as well.
PiecewiseLinear illustrative_indoor_pv_curve();
HarvestModel default_model();

// efficiency * cells * area_scale * curve(lux). Throws ValidationError for lux < 0.
double harvest_power(double lux, const HarvestModel& model);

// Time average of harvest_power over the trace (trapezoidal in time).
double mean_harvest(const SensorTrace& light, const HarvestModel& model);

struct NodeNeutrality {
    NodeId id;
    double consumed_w = 0.0;
    double harvested_w = 0.0;        // with model.cells cells
    double harvested_per_cell_w = 0.0;
    bool neutral = false;
    std::optional<long> cells_needed;  // empty when a cell harvests nothing
};

struct NeutralityReport {
    std::vector<NodeNeutrality> nodes;
    long total_cells = 0;            // over nodes with a finite requirement
    std::size_t neutral_nodes = 0;
    std::size_t unsustainable_nodes = 0;  // consumption > 0 and zero harvest
};

// Throws ValidationError listing nodes that have a power but no light trace.
NeutralityReport neutrality(const std::map<NodeId, double>& node_powers_w,
                            const std::map<NodeId, SensorTrace>& light_traces, const HarvestModel& model);

// `node_id,consumed_uw,harvested_uw,neutral,cells_needed`.
std::string report_csv(const NeutralityReport& report);
// Whitespace-separated `index node_id consumed_uw harvested_uw` rows (gnuplot).
std::string series_dat(const NeutralityReport& report);
// Log-scale gnuplot script plotting consumed vs harvested for each data file.
std::string gnuplot_script(const std::vector<std::pair<std::string, std::string>>& title_and_file,
                           const std::string& output_png);

}  // namespace enwsn::harvest
