#pragma once

#include "enwsn/node_id.hpp"
#include "enwsn/piecewise_linear.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace enwsn {

enum class SensorKind { light, temperature, humidity };
enum class Unit { lux, celsius, rh_percent, raw };

std::string_view to_string(SensorKind k);
std::string_view to_string(Unit u);
SensorKind parse_sensor_kind(std::string_view s);
Unit parse_unit(std::string_view s);
// Engineering unit a kind is measured in (light -> lux, ...).
Unit natural_unit(SensorKind k);

struct Sample {
    double t;  // seconds, dataset-local epoch
    double v;

    friend bool operator==(const Sample&, const Sample&) = default;
};

// A gap between consecutive samples that deviates from the nominal period by
// more than the jitter tolerance. `index` is the sample right after the gap.
struct Hole {
    std::size_t index;
    double gap_s;

    friend bool operator==(const Hole&, const Hole&) = default;
};

struct SensorTrace {
    NodeId node_id;
    SensorKind kind = SensorKind::light;
    Unit unit = Unit::lux;
    double period_s = 0.0;
    std::vector<Sample> samples;
    std::vector<Hole> holes;

    // Span covered by the trace in the sense used for rate computations:
    // one nominal period per sample.
    double horizon_s() const { return static_cast<double>(samples.size()) * period_s; }

    friend bool operator==(const SensorTrace&, const SensorTrace&) = default;
};

struct TraceOptions {
    SensorKind kind = SensorKind::light;
    Unit unit = Unit::lux;
    // Inferred from the median sample spacing when absent.
    std::optional<double> period_s;
    // Allowed |delta - period| as a fraction of the period before a hole is recorded.
    double jitter_fraction = 0.5;
    NodeId node_id{};
};

// Sorts (stable) by time, checks invariants, infers the period and records
// holes. Throws EmptyTraceError, ValidationError.
void validate(SensorTrace& trace, double jitter_fraction = 0.5);

// CSV with header `t,v`. Throws ParseError (with line), ValidationError,
// EmptyTraceError.
SensorTrace parse_trace(std::string_view text, const TraceOptions& opts = {});

// `t,v` CSV; timestamps use the shortest round-trip form, values 6 significant digits.
std::string serialize_trace(const SensorTrace& trace);

struct IntelParseStats {
    std::size_t records = 0;
    std::size_t dropped_missing = 0;    // short record or NaN/unparseable selected field
    std::size_t dropped_duplicate = 0;  // repeated timestamp for the same mote
};

// Intel Berkeley lab format: `date time epoch moteid temperature humidity light voltage`.
// Timestamps become seconds since the first timestamp in the file.
std::map<NodeId, SensorTrace> parse_intel_lab(std::string_view text, SensorKind kind,
                                              IntelParseStats* stats = nullptr,
                                              double period_s = 31.0);

struct SynthSpec {
    int days = 1;
    double period_s = 30.0;
    double base = 0.0;
    double diurnal_amplitude = 0.0;
    double noise_sigma = 0.0;
    double step_events_per_day = 0.0;
    double step_magnitude = 0.0;
    std::uint64_t seed = 1;
    NodeId node_id{};
    SensorKind kind = SensorKind::light;
};

// v(t) = base + amplitude*sin(2*pi*t/86400) + N(0, sigma) + accumulated steps.
// Step times are drawn first for the whole horizon (exponential inter-arrival,
// random sign), then one noise draw per sample, all from one Rng(seed).
SensorTrace synth_trace(const SynthSpec& spec);

using Calibration = PiecewiseLinear;

// Maps a raw trace to lux. Throws ValidationError if the trace is not raw.
SensorTrace apply_calibration(const SensorTrace& trace, const Calibration& cal);

}  // namespace enwsn
