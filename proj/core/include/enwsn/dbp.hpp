#pragma once

#include "enwsn/trace.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace enwsn::dbp {

// How the absolute and relative allowances combine.
//   any: |err| <= max(eps_abs, eps_rel*|actual|)  (either bound suffices)
//   all: |err| <= min(eps_abs, eps_rel*|actual|)
enum class ToleranceMode { any, all };

struct Params {
    std::size_t m = 16;      // window length in samples
    std::size_t l = 4;       // edge points averaged at each end of the window
    double eps_abs = 15.0;   // trace units
    double eps_rel = 0.05;   // fraction of |actual|
    std::size_t w_consec = 2;  // tolerated consecutive violations; violation w_consec+1 refits
    ToleranceMode tolerance_mode = ToleranceMode::any;

    // Throws ConfigError unless 1 <= l <= m/2 and the tolerances are non-negative.
    void check() const;
};

// Parses `m=16,l=4,eps-abs=15,eps-rel=0.05,w=2[,mode=any|all]`; unspecified keys keep `base` values.
Params parse_params(std::string_view spec, Params base = {});
std::string to_string(const Params& p);

// Line through (anchor_t, anchor_v) with the given slope.
struct Model {
    double slope = 0.0;     // units per second
    double anchor_t = 0.0;  // centroid time of the last edge window
    double anchor_v = 0.0;  // mean of the last edge window
    double fitted_at = 0.0;

    friend bool operator==(const Model&, const Model&) = default;
};

// Connects the mean of the first l samples (at their centroid time) with the
// mean of the last l samples. Throws FitError if both centroids coincide.
Model fit_model(std::span<const Sample> window, std::size_t l);

inline double predict(const Model& model, double t) { return model.anchor_v + model.slope * (t - model.anchor_t); }

bool within_tolerance(double predicted, double actual, double eps_abs, double eps_rel,
                      ToleranceMode mode = ToleranceMode::any);

struct ModelEvent {
    std::size_t index;  // sample index that triggered the (re)fit
    double t;
    Model model;

    friend bool operator==(const ModelEvent&, const ModelEvent&) = default;
};

struct Result {
    std::vector<ModelEvent> model_events;
    std::size_t samples_total = 0;
    std::size_t transmissions = 0;
    double suppression = 0.0;
    // Largest |predicted - actual| over every suppressed post-warm-up sample,
    // including out-of-band samples absorbed by the consecutive-violation grace.
    double max_abs_error = 0.0;
    // Same, restricted to samples that were within tolerance.
    double max_abs_error_in_band = 0.0;
    double horizon_s = 0.0;
};

/// Streaming evaluator: feed samples one at a time, get a model back whenever
/// one has to be sent to the sink.
///
/// The first model is fitted once m samples have been collected. After that
/// each sample is checked against the active model; a run of more than
/// w_consec consecutive out-of-tolerance samples refits from the current
/// m-sample window. Single owner; not thread safe.
class Stream {
public:
    explicit Stream(Params params);

    std::optional<Model> push(Sample s);

    const std::optional<Model>& active() const { return model_; }
    std::size_t samples_seen() const { return seen_; }
    std::size_t transmissions() const { return transmissions_; }
    double max_abs_error() const { return max_err_; }
    double max_abs_error_in_band() const { return max_err_in_band_; }

private:
    Model refit(double t);

    Params params_;
    std::vector<Sample> ring_;
    std::size_t head_ = 0;  // oldest sample once the ring is full
    std::vector<Sample> scratch_;
    std::optional<Model> model_;
    std::size_t seen_ = 0;
    std::size_t violations_ = 0;
    std::size_t transmissions_ = 0;
    double max_err_ = 0.0;
    double max_err_in_band_ = 0.0;
};

// Throws InsufficientDataError when the trace is shorter than m.
Result run(const SensorTrace& trace, const Params& params);

// transmissions * 3600 / horizon_s.
double traffic_rate(const Result& result, double horizon_s);

// `t,slope,anchor_t,anchor_v` per event, followed by `# key=value` stats lines.
std::string events_csv(const Result& result);

}  // namespace enwsn::dbp
