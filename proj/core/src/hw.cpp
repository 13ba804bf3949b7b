#include "enwsn/hw.hpp"

#include "enwsn/error.hpp"
#include "enwsn/text_io.hpp"

#include <functional>

namespace enwsn::hw {

std::string_view to_string(McuMode m) {
    switch (m) {
        case McuMode::standby: return "standby";
        case McuMode::sleep: return "sleep";
        case McuMode::hibernation: return "hibernation";
        case McuMode::ml_hibernation: return "ml_hibernation";
    }
    return "?";
}

std::string_view to_string(RadioIdle r) {
    switch (r) {
        case RadioIdle::lpm1: return "lpm1";
        case RadioIdle::lpm2: return "lpm2";
        case RadioIdle::lpm2_ff: return "lpm2_ff";
    }
    return "?";
}

std::string_view to_string(Wakeup w) {
    switch (w) {
        case Wakeup::none: return "none";
        case Wakeup::us: return "us";
        case Wakeup::us_addressed: return "us_addressed";
        case Wakeup::radio: return "radio";
        case Wakeup::radio_addressed: return "radio_addressed";
    }
    return "?";
}

std::string_view to_string(Software s) {
    switch (s) {
        case Software::no_dbp: return "no-dbp";
        case Software::dbp: return "dbp";
        case Software::mbs: return "mbs";
    }
    return "?";
}

std::string_view to_string(WurKind k) { return k == WurKind::us ? "us" : "radio"; }

std::string_view label(McuMode m) {
    switch (m) {
        case McuMode::standby: return "Standby";
        case McuMode::sleep: return "Sleep";
        case McuMode::hibernation: return "Hib.";
        case McuMode::ml_hibernation: return "ML Hib.";
    }
    return "?";
}

std::string_view label(RadioIdle r) {
    switch (r) {
        case RadioIdle::lpm1: return "LPM1";
        case RadioIdle::lpm2: return "LPM2";
        case RadioIdle::lpm2_ff: return "LPM2+FF";
    }
    return "?";
}

std::string_view label(Wakeup w) {
    switch (w) {
        case Wakeup::none: return "none";
        case Wakeup::us: return "US";
        case Wakeup::us_addressed: return "USa";
        case Wakeup::radio: return "Radio";
        case Wakeup::radio_addressed: return "Radioa";
    }
    return "?";
}

std::string_view label(Software s) {
    switch (s) {
        case Software::no_dbp: return "no-DBP";
        case Software::dbp: return "DBP";
        case Software::mbs: return "MBS";
    }
    return "?";
}

Software parse_software(std::string_view s) {
    if (s == "no-dbp" || s == "no_dbp" || s == "nodbp") return Software::no_dbp;
    if (s == "dbp") return Software::dbp;
    if (s == "mbs") return Software::mbs;
    throw ConfigError("unknown software mode '" + std::string(s) + "' (expected no-dbp, dbp or mbs)");
}

std::optional<WurKind> wur_kind(Wakeup w) {
    switch (w) {
        case Wakeup::none: return std::nullopt;
        case Wakeup::us:
        case Wakeup::us_addressed: return WurKind::us;
        case Wakeup::radio:
        case Wakeup::radio_addressed: return WurKind::radio;
    }
    return std::nullopt;
}

bool addressed(Wakeup w) { return w == Wakeup::us_addressed || w == Wakeup::radio_addressed; }

bool retains_state(McuMode m) { return m == McuMode::standby || m == McuMode::sleep; }

double McuSpec::idle_w(McuMode m) const {
    switch (m) {
        case McuMode::standby: return standby_w;
        case McuMode::sleep: return sleep_w;
        case McuMode::hibernation:
        case McuMode::ml_hibernation: return hibernation_w;
    }
    return standby_w;
}

double McuSpec::wake_s(McuMode m) const {
    switch (m) {
        case McuMode::standby: return wake_standby_s;
        case McuMode::sleep: return wake_sleep_s;
        case McuMode::hibernation: return wake_hibernation_s;
        case McuMode::ml_hibernation: return wake_ml_hibernation_s;
    }
    return wake_standby_s;
}

double RadioSpec::tx_w_at(double dbm) const {
    const double f = (dbm - tx_low_dbm) / (tx_high_dbm - tx_low_dbm);
    return tx_low_w + f * (tx_high_w - tx_low_w);
}

WurSpec default_us_wur() {
    WurSpec w;
    w.kind = WurKind::us;
    w.listen_w = 1640e-9;
    w.decode_w = 14e-6;
    w.tx_standby_w = 40e-9;
    w.tx_active_w = 37e-3;
    w.trigger_s_broadcast = 50e-3;
    w.trigger_s_addressed = 450e-3;
    w.range_m = 15.0;
    w.throughput_bps = 20.0;
    w.radiation_pattern = "55 deg at -6dB";
    return w;
}

WurSpec default_radio_wur() {
    WurSpec w;
    w.kind = WurKind::radio;
    w.listen_w = 462e-9;
    w.decode_w = 49e-6;
    w.tx_standby_w = 690e-9;
    w.tx_active_w = 78e-3;
    w.trigger_s_broadcast = 130e-6;
    w.trigger_s_addressed = 0.8e-3;
    w.range_m = 20.0;
    w.throughput_bps = 10000.0;
    w.radiation_pattern = "omnidirectional";
    w.sensitivity_dbm = -42.0;
    return w;
}

Catalog default_catalog() {
    Catalog c;
    c.us = default_us_wur();
    c.radio_wur = default_radio_wur();
    c.harvesters = {
        {"Photovoltaic", 0.0, 10.0, "cm2", true},
        {"Electromagnetic", 1.0, 4.0, "cm3", false},
        {"Vibration (electrostatic)", 3.8, 3.8, "cm2", false},
        {"Radio Frequency", 0.1, 0.1, "cm2", false},
        {"Acoustic noise", 0.003, 0.096, "cm3", false},
    };
    return c;
}

void Catalog::check() const {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw ConfigError(std::string("catalog: ") + what);
    };
    require(mcu.active_processing_w > mcu.standby_w && mcu.standby_w > mcu.sleep_w && mcu.sleep_w > mcu.hibernation_w &&
                mcu.hibernation_w >= 0.0,
            "MCU powers must decrease strictly from active to hibernation");
    require(mcu.wake_standby_s > 0 && mcu.wake_sleep_s > 0 && mcu.wake_hibernation_s > 0 && mcu.wake_ml_hibernation_s > 0,
            "MCU wake times must be > 0");
    require(mcu.sample_s >= 0.0, "mcu.sample_s must be >= 0");
    require(radio.tx_high_dbm > radio.tx_low_dbm && radio.tx_high_w >= radio.tx_low_w, "TX power must be monotone in dBm");
    require(radio.lpm2_w < radio.lpm1_w && radio.lpm1_w < radio.rx_w, "need lpm2 < lpm1 < rx");
    require(radio.deep_off_w >= 0.0 && radio.deep_off_w <= radio.lpm2_w, "deep_off_w must be in [0, lpm2_w]");
    require(radio.phy_rate_bps > 0.0 && radio.frame_bytes >= 0.0 && radio.header_s >= 0.0, "bad frame parameters");
    for (const WurSpec* w : {&us, &radio_wur}) {
        require(w->decode_w > w->listen_w, "WuR decode power must exceed listen power");
        require(w->tx_active_w >= w->tx_standby_w, "WuR tx active must be >= standby");
        require(w->trigger_s_addressed >= w->trigger_s_broadcast && w->trigger_s_broadcast >= 0.0,
                "WuR addressed trigger must be >= broadcast trigger");
    }
    require(mbs.sleep_w < mbs.active_w, "MBS sleep power must be below active power");
    require(mbs.sample_active_s >= 0.0, "mbs.sample_active_s must be >= 0");
    require(mac.channel_check_s < mac.contikimac_interval_s && mac.channel_check_s >= 0.0,
            "ContikiMAC channel check must be shorter than the interval");
}

namespace {

struct Key {
    const char* name;
    std::function<double&(Catalog&)> ref;
};

const std::vector<Key>& keys() {
    static const std::vector<Key> k = {
        {"mcu.active_processing_w", [](Catalog& c) -> double& { return c.mcu.active_processing_w; }},
        {"mcu.active_tx_context_w", [](Catalog& c) -> double& { return c.mcu.active_tx_context_w; }},
        {"mcu.standby_w", [](Catalog& c) -> double& { return c.mcu.standby_w; }},
        {"mcu.sleep_w", [](Catalog& c) -> double& { return c.mcu.sleep_w; }},
        {"mcu.hibernation_w", [](Catalog& c) -> double& { return c.mcu.hibernation_w; }},
        {"mcu.wake_standby_s", [](Catalog& c) -> double& { return c.mcu.wake_standby_s; }},
        {"mcu.wake_sleep_s", [](Catalog& c) -> double& { return c.mcu.wake_sleep_s; }},
        {"mcu.wake_hibernation_s", [](Catalog& c) -> double& { return c.mcu.wake_hibernation_s; }},
        {"mcu.wake_ml_hibernation_s", [](Catalog& c) -> double& { return c.mcu.wake_ml_hibernation_s; }},
        {"mcu.sample_s", [](Catalog& c) -> double& { return c.mcu.sample_s; }},
        {"radio.lpm1_w", [](Catalog& c) -> double& { return c.radio.lpm1_w; }},
        {"radio.lpm2_w", [](Catalog& c) -> double& { return c.radio.lpm2_w; }},
        {"radio.rx_w", [](Catalog& c) -> double& { return c.radio.rx_w; }},
        {"radio.tx_low_dbm", [](Catalog& c) -> double& { return c.radio.tx_low_dbm; }},
        {"radio.tx_low_w", [](Catalog& c) -> double& { return c.radio.tx_low_w; }},
        {"radio.tx_high_dbm", [](Catalog& c) -> double& { return c.radio.tx_high_dbm; }},
        {"radio.tx_high_w", [](Catalog& c) -> double& { return c.radio.tx_high_w; }},
        {"radio.tx_dbm", [](Catalog& c) -> double& { return c.radio.tx_dbm; }},
        {"radio.phy_rate_bps", [](Catalog& c) -> double& { return c.radio.phy_rate_bps; }},
        {"radio.frame_bytes", [](Catalog& c) -> double& { return c.radio.frame_bytes; }},
        {"radio.header_s", [](Catalog& c) -> double& { return c.radio.header_s; }},
        {"radio.deep_off_w", [](Catalog& c) -> double& { return c.radio.deep_off_w; }},
        {"wur.us.listen_w", [](Catalog& c) -> double& { return c.us.listen_w; }},
        {"wur.us.decode_w", [](Catalog& c) -> double& { return c.us.decode_w; }},
        {"wur.us.tx_standby_w", [](Catalog& c) -> double& { return c.us.tx_standby_w; }},
        {"wur.us.tx_active_w", [](Catalog& c) -> double& { return c.us.tx_active_w; }},
        {"wur.us.trigger_broadcast_s", [](Catalog& c) -> double& { return c.us.trigger_s_broadcast; }},
        {"wur.us.trigger_addressed_s", [](Catalog& c) -> double& { return c.us.trigger_s_addressed; }},
        {"wur.us.range_m", [](Catalog& c) -> double& { return c.us.range_m; }},
        {"wur.us.throughput_bps", [](Catalog& c) -> double& { return c.us.throughput_bps; }},
        {"wur.radio.listen_w", [](Catalog& c) -> double& { return c.radio_wur.listen_w; }},
        {"wur.radio.decode_w", [](Catalog& c) -> double& { return c.radio_wur.decode_w; }},
        {"wur.radio.tx_standby_w", [](Catalog& c) -> double& { return c.radio_wur.tx_standby_w; }},
        {"wur.radio.tx_active_w", [](Catalog& c) -> double& { return c.radio_wur.tx_active_w; }},
        {"wur.radio.trigger_broadcast_s", [](Catalog& c) -> double& { return c.radio_wur.trigger_s_broadcast; }},
        {"wur.radio.trigger_addressed_s", [](Catalog& c) -> double& { return c.radio_wur.trigger_s_addressed; }},
        {"wur.radio.range_m", [](Catalog& c) -> double& { return c.radio_wur.range_m; }},
        {"wur.radio.throughput_bps", [](Catalog& c) -> double& { return c.radio_wur.throughput_bps; }},
        {"mbs.sleep_w", [](Catalog& c) -> double& { return c.mbs.sleep_w; }},
        {"mbs.active_w", [](Catalog& c) -> double& { return c.mbs.active_w; }},
        {"mbs.sample_active_s", [](Catalog& c) -> double& { return c.mbs.sample_active_s; }},
        {"mbs.ram_bytes", [](Catalog& c) -> double& { return c.mbs.ram_bytes; }},
        {"mbs.max_buffered_samples", [](Catalog& c) -> double& { return c.mbs.max_buffered_samples; }},
        {"mac.contikimac_interval_s", [](Catalog& c) -> double& { return c.mac.contikimac_interval_s; }},
        {"mac.channel_check_s", [](Catalog& c) -> double& { return c.mac.channel_check_s; }},
    };
    return k;
}

}  // namespace

std::vector<std::string> catalog_keys() {
    std::vector<std::string> out;
    for (const auto& k : keys()) out.emplace_back(k.name);
    out.emplace_back("radio.frame_filtering");
    return out;
}

void apply_overrides(Catalog& catalog, std::string_view doc) {
    for (const auto& line : text::lines(doc)) {
        auto s = text::trim(line.text);
        if (s.front() == '#') continue;
        if (const auto hash = s.find('#'); hash != std::string_view::npos) s = text::trim(s.substr(0, hash));
        const auto eq = s.find('=');
        if (eq == std::string_view::npos) throw ParseError("expected key = value", line.number);
        const auto key = text::trim(s.substr(0, eq));
        const auto val = text::trim(s.substr(eq + 1));
        if (key == "radio.frame_filtering") {
            if (val == "true" || val == "1") catalog.radio.frame_filtering = true;
            else if (val == "false" || val == "0") catalog.radio.frame_filtering = false;
            else throw ParseError("expected true|false", line.number);
            continue;
        }
        bool found = false;
        for (const auto& k : keys()) {
            if (key == k.name) {
                k.ref(catalog) = text::parse_double(val, line.number);
                found = true;
                break;
            }
        }
        if (!found) throw ParseError("unknown catalog key '" + std::string(key) + "'", line.number);
    }
    catalog.check();
}

std::string dump_catalog(const Catalog& catalog) {
    Catalog copy = catalog;
    std::string out;
    for (const auto& k : keys()) out += std::string(k.name) + " = " + text::format_exact(k.ref(copy)) + '\n';
    out += std::string("radio.frame_filtering = ") + (catalog.radio.frame_filtering ? "true" : "false") + '\n';
    return out;
}

const std::array<HwConfig, 23>& enumerate_configs() {
    using M = McuMode;
    using R = RadioIdle;
    using W = Wakeup;
    static const std::array<HwConfig, 23> rows = {{
        {1, M::standby, R::lpm1, W::none},
        {2, M::standby, R::lpm2, W::none},
        {3, M::standby, R::lpm2_ff, W::none},
        {4, M::sleep, R::lpm2, W::none},
        {5, M::sleep, R::lpm2_ff, W::none},
        {6, M::sleep, R::lpm2, W::us},
        {7, M::sleep, R::lpm2_ff, W::us},
        {8, M::sleep, R::lpm2, W::us_addressed},
        {9, M::sleep, R::lpm2, W::radio},
        {10, M::sleep, R::lpm2_ff, W::radio},
        {11, M::sleep, R::lpm2, W::radio_addressed},
        {12, M::hibernation, R::lpm2, W::us},
        {13, M::hibernation, R::lpm2_ff, W::us},
        {14, M::hibernation, R::lpm2, W::us_addressed},
        {15, M::hibernation, R::lpm2, W::radio},
        {16, M::hibernation, R::lpm2_ff, W::radio},
        {17, M::hibernation, R::lpm2, W::radio_addressed},
        {18, M::ml_hibernation, R::lpm2, W::us},
        {19, M::ml_hibernation, R::lpm2_ff, W::us},
        {20, M::ml_hibernation, R::lpm2, W::us_addressed},
        {21, M::ml_hibernation, R::lpm2, W::radio},
        {22, M::ml_hibernation, R::lpm2_ff, W::radio},
        {23, M::ml_hibernation, R::lpm2, W::radio_addressed},
    }};
    return rows;
}

HwConfig config_by_id(int id) {
    if (id < 1 || id > 23) throw ConfigError("configuration id must be in 1..23, got " + std::to_string(id));
    return enumerate_configs()[static_cast<std::size_t>(id - 1)];
}

bool radio_power_gated(const HwConfig& c) {
    return c.wakeup != Wakeup::none && c.mcu != McuMode::standby;
}

double Workload::utilization() const {
    double u = 0.0;
    for (const auto& e : events) u += e.rate_per_s * e.busy_s;
    return u;
}

Feasibility feasible(const HwConfig& config, const Workload& workload, const Catalog& catalog) {
    if (config.software == Software::mbs) return {};
    if (config.software == Software::dbp && config.mcu == McuMode::ml_hibernation)
        return {false, std::string(kNoRetention)};
    if (workload.sampling_period_s < catalog.mcu.wake_s(config.mcu)) return {false, std::string(kPeriodBelowWake)};
    if (workload.utilization() >= 1.0) return {false, std::string(kUtilizationOverrun)};
    return {};
}

}  // namespace enwsn::hw
