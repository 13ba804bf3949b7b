#include "enwsn/trace.hpp"

#include "enwsn/error.hpp"
#include "enwsn/rng.hpp"
#include "enwsn/text_io.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <set>

namespace enwsn {

std::string_view to_string(SensorKind k) {
    switch (k) {
        case SensorKind::light: return "light";
        case SensorKind::temperature: return "temperature";
        case SensorKind::humidity: return "humidity";
    }
    return "?";
}

std::string_view to_string(Unit u) {
    switch (u) {
        case Unit::lux: return "lux";
        case Unit::celsius: return "celsius";
        case Unit::rh_percent: return "rh_percent";
        case Unit::raw: return "raw";
    }
    return "?";
}

SensorKind parse_sensor_kind(std::string_view s) {
    if (s == "light") return SensorKind::light;
    if (s == "temperature") return SensorKind::temperature;
    if (s == "humidity") return SensorKind::humidity;
    throw ConfigError("unknown sensor kind '" + std::string(s) + "'");
}

Unit parse_unit(std::string_view s) {
    if (s == "lux") return Unit::lux;
    if (s == "celsius") return Unit::celsius;
    if (s == "rh_percent") return Unit::rh_percent;
    if (s == "raw") return Unit::raw;
    throw ConfigError("unknown unit '" + std::string(s) + "'");
}

Unit natural_unit(SensorKind k) {
    switch (k) {
        case SensorKind::light: return Unit::lux;
        case SensorKind::temperature: return Unit::celsius;
        case SensorKind::humidity: return Unit::rh_percent;
    }
    return Unit::raw;
}

namespace {

double median_delta(const std::vector<Sample>& s) {
    std::vector<double> d;
    d.reserve(s.size() - 1);
    for (std::size_t i = 1; i < s.size(); ++i) d.push_back(s[i].t - s[i - 1].t);
    const auto mid = d.begin() + static_cast<std::ptrdiff_t>(d.size() / 2);
    std::nth_element(d.begin(), mid, d.end());
    return *mid;
}

}  // namespace

void validate(SensorTrace& trace, double jitter_fraction) {
    if (trace.samples.empty()) throw EmptyTraceError("trace " + trace.node_id.str() + " has no samples");
    if (trace.unit != Unit::raw && trace.unit != natural_unit(trace.kind))
        throw ValidationError("unit " + std::string(to_string(trace.unit)) + " does not match kind " +
                              std::string(to_string(trace.kind)));
    std::stable_sort(trace.samples.begin(), trace.samples.end(),
                     [](const Sample& a, const Sample& b) { return a.t < b.t; });
    for (std::size_t i = 1; i < trace.samples.size(); ++i) {
        if (!(trace.samples[i].t > trace.samples[i - 1].t))
            throw ValidationError("duplicate timestamp " + text::format_exact(trace.samples[i].t) + " in trace " +
                                  trace.node_id.str());
    }
    if (trace.period_s <= 0.0) {
        if (trace.samples.size() < 2)
            throw ValidationError("cannot infer the sampling period from a single sample");
        trace.period_s = median_delta(trace.samples);
    }
    trace.holes.clear();
    const double jitter = jitter_fraction * trace.period_s;
    for (std::size_t i = 1; i < trace.samples.size(); ++i) {
        const double gap = trace.samples[i].t - trace.samples[i - 1].t;
        if (std::abs(gap - trace.period_s) > jitter) trace.holes.push_back({i, gap});
    }
}

SensorTrace parse_trace(std::string_view text, const TraceOptions& opts) {
    SensorTrace trace;
    trace.node_id = opts.node_id;
    trace.kind = opts.kind;
    trace.unit = opts.unit;
    trace.period_s = opts.period_s.value_or(0.0);

    const auto ls = text::lines(text);
    if (ls.empty()) throw EmptyTraceError("empty trace document");
    const auto header = text::split(ls.front().text, ',');
    if (header.size() != 2 || header[0] != "t" || header[1] != "v")
        throw ParseError("expected header 't,v'", ls.front().number);

    trace.samples.reserve(ls.size() - 1);
    for (std::size_t i = 1; i < ls.size(); ++i) {
        const auto& line = ls[i];
        if (text::trim(line.text).front() == '#') continue;
        const auto comma = line.text.find(',');
        if (comma == std::string_view::npos || line.text.find(',', comma + 1) != std::string_view::npos)
            throw ParseError("expected 't,v'", line.number);
        trace.samples.push_back({text::parse_double(line.text.substr(0, comma), line.number),
                                 text::parse_double(line.text.substr(comma + 1), line.number)});
    }
    validate(trace, opts.jitter_fraction);
    return trace;
}

std::string serialize_trace(const SensorTrace& trace) {
    std::string out = "t,v\n";
    out.reserve(trace.samples.size() * 20 + 8);
    for (const auto& s : trace.samples) {
        out += text::format_exact(s.t);
        out += ',';
        out += text::format_sig(s.v, 6);
        out += '\n';
    }
    return out;
}

namespace {

// "2004-03-31" "03:38:15.757551" -> seconds since 1970-01-01 (no timezone).
bool parse_datetime(std::string_view date, std::string_view time, double& out) {
    const auto d = text::split(date, '-');
    const auto h = text::split(time, ':');
    if (d.size() != 3 || h.size() != 3) return false;
    double y = 0, mo = 0, da = 0, hh = 0, mm = 0, ss = 0;
    if (!text::try_parse_double(d[0], y) || !text::try_parse_double(d[1], mo) || !text::try_parse_double(d[2], da) ||
        !text::try_parse_double(h[0], hh) || !text::try_parse_double(h[1], mm) || !text::try_parse_double(h[2], ss))
        return false;
    using namespace std::chrono;
    const year_month_day ymd{year{static_cast<int>(y)}, month{static_cast<unsigned>(mo)},
                             day{static_cast<unsigned>(da)}};
    if (!ymd.ok()) return false;
    const auto days_since_epoch = sys_days{ymd}.time_since_epoch().count();
    out = static_cast<double>(days_since_epoch) * 86400.0 + hh * 3600.0 + mm * 60.0 + ss;
    return true;
}

}  // namespace

std::map<NodeId, SensorTrace> parse_intel_lab(std::string_view text, SensorKind kind, IntelParseStats* stats,
                                              double period_s) {
    IntelParseStats local;
    IntelParseStats& st = stats ? *stats : local;
    st = {};

    const std::size_t column = kind == SensorKind::temperature ? 4 : kind == SensorKind::humidity ? 5 : 6;
    struct Raw {
        double t;
        double v;
    };
    std::map<NodeId, std::vector<Raw>> by_mote;
    std::optional<double> t0;

    for (const auto& line : text::lines(text)) {
        const auto f = text::split_ws(line.text);
        ++st.records;
        if (f.size() < 4) {
            ++st.dropped_missing;
            continue;
        }
        const auto mote = text::parse_int(f[3], line.number);
        if (mote < 0 || mote > 0xFFFFFFFFLL) throw ParseError("mote id out of range", line.number);
        double t = 0.0;
        if (!parse_datetime(f[0], f[1], t)) throw ParseError("bad date/time", line.number);
        double v = 0.0;
        if (f.size() <= column || !text::try_parse_double(f[column], v) || std::isnan(v)) {
            ++st.dropped_missing;
            continue;
        }
        t0 = t0 ? std::min(*t0, t) : t;
        by_mote[NodeId{static_cast<std::uint32_t>(mote)}].push_back({t, v});
    }

    std::map<NodeId, SensorTrace> out;
    for (auto& [id, raws] : by_mote) {
        std::stable_sort(raws.begin(), raws.end(), [](const Raw& a, const Raw& b) { return a.t < b.t; });
        SensorTrace tr;
        tr.node_id = id;
        tr.kind = kind;
        tr.unit = natural_unit(kind);
        tr.period_s = period_s;
        for (const auto& r : raws) {
            const double t = r.t - *t0;
            if (!tr.samples.empty() && !(t > tr.samples.back().t)) {
                ++st.dropped_duplicate;
                continue;
            }
            tr.samples.push_back({t, r.v});
        }
        validate(tr);
        out.emplace(id, std::move(tr));
    }
    if (out.empty()) throw EmptyTraceError("Intel-lab document has no valid records");
    return out;
}

SensorTrace synth_trace(const SynthSpec& spec) {
    if (spec.days < 1) throw ConfigError("synth: days must be >= 1");
    if (!(spec.period_s > 0.0)) throw ConfigError("synth: period_s must be > 0");
    if (spec.noise_sigma < 0.0) throw ConfigError("synth: noise_sigma must be >= 0");
    if (spec.step_events_per_day < 0.0) throw ConfigError("synth: step rate must be >= 0");

    constexpr double day_s = 86400.0;
    const double horizon = spec.days * day_s;
    const auto n = static_cast<std::size_t>(std::llround(horizon / spec.period_s));

    Rng rng(spec.seed);
    struct Step {
        double t;
        double delta;
    };
    std::vector<Step> steps;
    if (spec.step_events_per_day > 0.0) {
        const double rate = spec.step_events_per_day / day_s;
        double t = rng.exponential(rate);
        while (t < horizon) {
            steps.push_back({t, rng.coin() ? spec.step_magnitude : -spec.step_magnitude});
            t += rng.exponential(rate);
        }
    }

    SensorTrace trace;
    trace.node_id = spec.node_id;
    trace.kind = spec.kind;
    trace.unit = natural_unit(spec.kind);
    trace.period_s = spec.period_s;
    trace.samples.reserve(n);

    std::size_t next_step = 0;
    double offset = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) * spec.period_s;
        while (next_step < steps.size() && steps[next_step].t <= t) offset += steps[next_step++].delta;
        double v = spec.base + spec.diurnal_amplitude * std::sin(2.0 * std::numbers::pi * t / day_s) + offset;
        if (spec.noise_sigma > 0.0) v += rng.gaussian(spec.noise_sigma);
        trace.samples.push_back({t, v});
    }
    return trace;
}

SensorTrace apply_calibration(const SensorTrace& trace, const Calibration& cal) {
    if (trace.unit != Unit::raw) throw ValidationError("calibration applies to raw traces only");
    if (cal.points().size() < 2) throw ConfigError("calibration needs at least 2 breakpoints");
    SensorTrace out = trace;
    out.unit = natural_unit(trace.kind);
    for (auto& s : out.samples) s.v = cal(s.v);
    return out;
}

}  // namespace enwsn
