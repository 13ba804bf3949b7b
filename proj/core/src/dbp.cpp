#include "enwsn/dbp.hpp"

#include "enwsn/error.hpp"
#include "enwsn/text_io.hpp"

#include <algorithm>
#include <cmath>

namespace enwsn::dbp {

void Params::check() const {
    if (l < 1 || 2 * l > m) throw ConfigError("dbp: need 1 <= l <= m/2 (m=" + std::to_string(m) + ", l=" + std::to_string(l) + ")");
    if (!(eps_abs >= 0.0)) throw ConfigError("dbp: eps_abs must be >= 0");
    if (!(eps_rel >= 0.0)) throw ConfigError("dbp: eps_rel must be >= 0");
}

Params parse_params(std::string_view spec, Params base) {
    Params p = base;
    if (!text::trim(spec).empty()) {
        for (const auto item : text::split(spec, ',')) {
            const auto eq = item.find('=');
            if (eq == std::string_view::npos) throw ConfigError("dbp: expected key=value, got '" + std::string(item) + "'");
            const auto key = text::trim(item.substr(0, eq));
            const auto val = text::trim(item.substr(eq + 1));
            double x = 0.0;
            if (key == "mode") {
                if (val == "any") p.tolerance_mode = ToleranceMode::any;
                else if (val == "all") p.tolerance_mode = ToleranceMode::all;
                else throw ConfigError("dbp: mode must be any|all");
                continue;
            }
            if (!text::try_parse_double(val, x)) throw ConfigError("dbp: bad value for " + std::string(key));
            const auto as_count = [&] {
                if (x < 0.0 || x != std::floor(x)) throw ConfigError("dbp: " + std::string(key) + " must be a non-negative integer");
                return static_cast<std::size_t>(x);
            };
            if (key == "m") p.m = as_count();
            else if (key == "l") p.l = as_count();
            else if (key == "eps-abs") p.eps_abs = x;
            else if (key == "eps-rel") p.eps_rel = x;
            else if (key == "w") p.w_consec = as_count();
            else throw ConfigError("dbp: unknown key '" + std::string(key) + "'");
        }
    }
    p.check();
    return p;
}

std::string to_string(const Params& p) {
    return "m=" + std::to_string(p.m) + ",l=" + std::to_string(p.l) + ",eps-abs=" + text::format_sig(p.eps_abs) +
           ",eps-rel=" + text::format_sig(p.eps_rel) + ",w=" + std::to_string(p.w_consec) +
           ",mode=" + (p.tolerance_mode == ToleranceMode::any ? "any" : "all");
}

Model fit_model(std::span<const Sample> window, std::size_t l) {
    if (l < 1 || 2 * l > window.size()) throw FitError("fit: need 1 <= l <= m/2");
    const std::size_t m = window.size();
    double sum_vf = 0.0, sum_tf = 0.0, sum_vl = 0.0, sum_tl = 0.0;
    for (std::size_t i = 0; i < l; ++i) {
        sum_vf += window[i].v;
        sum_tf += window[i].t;
    }
    for (std::size_t i = m - l; i < m; ++i) {
        sum_vl += window[i].v;
        sum_tl += window[i].t;
    }
    const double n = static_cast<double>(l);
    const double avg_first = sum_vf / n;
    const double c_first = sum_tf / n;
    const double avg_last = sum_vl / n;
    const double c_last = sum_tl / n;
    if (c_last == c_first) throw FitError("fit: degenerate window (edge centroids coincide)");
    return Model{(avg_last - avg_first) / (c_last - c_first), c_last, avg_last, window[m - 1].t};
}

bool within_tolerance(double predicted, double actual, double eps_abs, double eps_rel, ToleranceMode mode) {
    const double err = std::abs(predicted - actual);
    const double rel = eps_rel * std::abs(actual);
    const double allowance = mode == ToleranceMode::any ? std::max(eps_abs, rel) : std::min(eps_abs, rel);
    return err <= allowance;
}

Stream::Stream(Params params) : params_(params) {
    params_.check();
    ring_.reserve(params_.m);
    scratch_.resize(params_.m);
}

Model Stream::refit(double t) {
    for (std::size_t i = 0; i < params_.m; ++i) scratch_[i] = ring_[(head_ + i) % params_.m];
    Model model = fit_model(scratch_, params_.l);
    model.fitted_at = t;
    return model;
}

std::optional<Model> Stream::push(Sample s) {
    ++seen_;
    if (ring_.size() < params_.m) {
        ring_.push_back(s);
        if (ring_.size() < params_.m) return std::nullopt;
        model_ = refit(s.t);
        ++transmissions_;
        return model_;
    }
    ring_[head_] = s;
    head_ = (head_ + 1) % params_.m;

    const double err = std::abs(predict(*model_, s.t) - s.v);
    if (within_tolerance(predict(*model_, s.t), s.v, params_.eps_abs, params_.eps_rel, params_.tolerance_mode)) {
        violations_ = 0;
        max_err_ = std::max(max_err_, err);
        max_err_in_band_ = std::max(max_err_in_band_, err);
        return std::nullopt;
    }
    if (++violations_ <= params_.w_consec) {
        max_err_ = std::max(max_err_, err);
        return std::nullopt;
    }
    violations_ = 0;
    model_ = refit(s.t);
    ++transmissions_;
    return model_;
}

Result run(const SensorTrace& trace, const Params& params) {
    params.check();
    if (trace.samples.size() < params.m)
        throw InsufficientDataError("dbp: trace " + trace.node_id.str() + " has " + std::to_string(trace.samples.size()) +
                                    " samples, window needs " + std::to_string(params.m));
    Stream stream(params);
    Result r;
    for (std::size_t i = 0; i < trace.samples.size(); ++i) {
        const auto& s = trace.samples[i];
        if (auto model = stream.push(s)) r.model_events.push_back({i, s.t, *model});
    }
    r.samples_total = trace.samples.size();
    r.transmissions = stream.transmissions();
    r.suppression = 1.0 - static_cast<double>(r.transmissions) / static_cast<double>(r.samples_total);
    r.max_abs_error = stream.max_abs_error();
    r.max_abs_error_in_band = stream.max_abs_error_in_band();
    r.horizon_s = trace.horizon_s();
    return r;
}

double traffic_rate(const Result& result, double horizon_s) {
    if (!(horizon_s > 0.0)) throw ConfigError("traffic_rate: horizon must be > 0");
    return static_cast<double>(result.transmissions) * 3600.0 / horizon_s;
}

std::string events_csv(const Result& result) {
    std::string out = "t,slope,anchor_t,anchor_v\n";
    for (const auto& e : result.model_events) {
        out += text::format_exact(e.t) + ',' + text::format_exact(e.model.slope) + ',' +
               text::format_exact(e.model.anchor_t) + ',' + text::format_exact(e.model.anchor_v) + '\n';
    }
    out += "# samples=" + std::to_string(result.samples_total) + '\n';
    out += "# transmissions=" + std::to_string(result.transmissions) + '\n';
    out += "# suppression=" + text::format_sig(result.suppression, 8) + '\n';
    out += "# max_abs_error=" + text::format_sig(result.max_abs_error, 8) + '\n';
    out += "# max_abs_error_in_band=" + text::format_sig(result.max_abs_error_in_band, 8) + '\n';
    return out;
}

}  // namespace enwsn::dbp
