#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace enwsn::hw {

enum class McuMode { standby, sleep, hibernation, ml_hibernation };
enum class RadioIdle { lpm1, lpm2, lpm2_ff };
enum class Wakeup { none, us, us_addressed, radio, radio_addressed };
enum class Software { no_dbp, dbp, mbs };
enum class WurKind { us, radio };

std::string_view to_string(McuMode m);
std::string_view to_string(RadioIdle r);
std::string_view to_string(Wakeup w);
std::string_view to_string(Software s);
std::string_view to_string(WurKind k);
// Short labels used in the tables ("Standby", "LPM2+FF", "Radioa", ...).
std::string_view label(McuMode m);
std::string_view label(RadioIdle r);
std::string_view label(Wakeup w);
std::string_view label(Software s);

Software parse_software(std::string_view s);  // accepts no-dbp / no_dbp / dbp / mbs

std::optional<WurKind> wur_kind(Wakeup w);
bool addressed(Wakeup w);
bool retains_state(McuMode m);  // standby and sleep keep RAM; hibernation restores, ML hibernation loses it

// MSP430-class main MCU of the node. Powers in W, times in s.
struct McuSpec {
    double active_processing_w = 13e-3;
    // Whole-node draw while transmitting; informational, the power model bills
    // MCU and transceiver separately.
    double active_tx_context_w = 66e-3;
    double standby_w = 14.67e-6;
    double sleep_w = 1.32e-6;
    double hibernation_w = 0.36e-6;
    double wake_standby_s = 25e-3;
    double wake_sleep_s = 25e-3;
    double wake_hibernation_s = 500e-3;
    double wake_ml_hibernation_s = 27e-3;
    // Sampling plus the prediction check on the main MCU.
    double sample_s = 5e-3;

    double idle_w(McuMode m) const;
    double wake_s(McuMode m) const;
};

// CC2520-class data transceiver.
struct RadioSpec {
    double lpm1_w = 3e-3;
    double lpm2_w = 13.5e-6;
    double rx_w = 69.9e-3;
    double tx_low_dbm = -18.0;
    double tx_low_w = 48.6e-3;
    double tx_high_dbm = 5.0;
    double tx_high_w = 100.8e-3;
    double tx_dbm = 0.0;
    double phy_rate_bps = 250000.0;
    double frame_bytes = 128.0;
    // Partial reception before hardware frame filtering rejects a frame.
    double header_s = 0.5e-3;
    // Power-gated floor used when a wake-up receiver takes over listening.
    double deep_off_w = 0.0;
    bool frame_filtering = true;

    // Linear in dBm between the two characterised endpoints.
    double tx_w_at(double dbm) const;
    double tx_w() const { return tx_w_at(tx_dbm); }
};

struct WurSpec {
    WurKind kind = WurKind::radio;
    double listen_w = 0.0;
    double decode_w = 0.0;
    double tx_standby_w = 0.0;
    double tx_active_w = 0.0;
    double trigger_s_broadcast = 0.0;
    double trigger_s_addressed = 0.0;
    double range_m = 0.0;
    double throughput_bps = 0.0;
    std::string radiation_pattern;
    std::optional<double> sensitivity_dbm;

    double trigger_s(bool addressed_mode) const { return addressed_mode ? trigger_s_addressed : trigger_s_broadcast; }
};

WurSpec default_us_wur();
WurSpec default_radio_wur();

// PIC-class sensing peripheral used for model-based sensing.
struct MbsSpec {
    double sleep_w = 36e-9;
    double active_w = 10.8e-6;
    double sample_active_s = 10e-3;
    double ram_bytes = 1024.0;
    double max_buffered_samples = 512.0;
};

struct MacSpec {
    double contikimac_interval_s = 0.1;
    double channel_check_s = 1e-3;
    // Expected sender strobing before the receiver's next check.
    double strobe_expected_s() const { return contikimac_interval_s / 2.0; }
};

struct HarvesterCatalogEntry {
    std::string technology;
    double density_low_uw = 0.0;
    double density_high_uw = 0.0;
    std::string per;  // "cm2" or "cm3"
    bool upper_bound_only = false;
};

struct Catalog {
    McuSpec mcu;
    RadioSpec radio;
    WurSpec us;
    WurSpec radio_wur;
    MbsSpec mbs;
    MacSpec mac;
    std::vector<HarvesterCatalogEntry> harvesters;

    const WurSpec& wur(WurKind k) const { return k == WurKind::us ? us : radio_wur; }

    // Throws ConfigError when a spec invariant is violated.
    void check() const;
};

Catalog default_catalog();

// `section.key = value` lines, `#` comments. Keys carry their unit suffix
// (`_w`, `_s`, `_bps`, `_dbm`, ...). See catalog_keys() for the full list.
// Throws ConfigError / ParseError.
void apply_overrides(Catalog& catalog, std::string_view doc);
std::vector<std::string> catalog_keys();
std::string dump_catalog(const Catalog& catalog);

struct HwConfig {
    int id = 0;
    McuMode mcu = McuMode::standby;
    RadioIdle radio = RadioIdle::lpm1;
    Wakeup wakeup = Wakeup::none;
    Software software = Software::no_dbp;

    HwConfig with(Software s) const {
        HwConfig c = *this;
        c.software = s;
        return c;
    }
    friend bool operator==(const HwConfig&, const HwConfig&) = default;
};

// The 23 hardware rows (software = no_dbp).
const std::array<HwConfig, 23>& enumerate_configs();
HwConfig config_by_id(int id);

// True when a wake-up receiver takes over listening and the transceiver is
// power-gated instead of idling in its low-power mode.
bool radio_power_gated(const HwConfig& c);

struct EventLoad {
    double rate_per_s = 0.0;
    double busy_s = 0.0;
};

struct Workload {
    double sampling_period_s = 0.0;
    std::vector<EventLoad> events;

    double utilization() const;
};

struct Feasibility {
    bool ok = true;
    std::string reason;
};

inline constexpr std::string_view kNoRetention = "no data retention";
inline constexpr std::string_view kUtilizationOverrun = "utilization overrun";
inline constexpr std::string_view kPeriodBelowWake = "sampling period shorter than wake-up time";

Feasibility feasible(const HwConfig& config, const Workload& workload, const Catalog& catalog);

}  // namespace enwsn::hw
