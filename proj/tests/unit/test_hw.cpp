#include "generators.hpp"

#include "enwsn/error.hpp"
#include "enwsn/hw.hpp"
#include "enwsn/text_io.hpp"

#include <doctest.h>

#include <set>
#include <string>

using namespace enwsn;
using namespace enwsn::hw;

TEST_SUITE("hw") {

TEST_CASE("default catalog constants") {
    const auto c = default_catalog();
    CHECK(c.mcu.sleep_w == 1.32e-6);
    CHECK(c.mcu.standby_w == 14.67e-6);
    CHECK(c.mcu.hibernation_w == 0.36e-6);
    CHECK(c.mcu.active_processing_w == 13e-3);
    CHECK(c.mcu.wake_s(McuMode::sleep) == 25e-3);
    CHECK(c.mcu.wake_s(McuMode::hibernation) == 500e-3);
    CHECK(c.mcu.wake_s(McuMode::ml_hibernation) == 27e-3);
    CHECK(c.radio.lpm1_w == 3e-3);
    CHECK(c.radio.lpm2_w == 13.5e-6);
    CHECK(c.radio.rx_w == 69.9e-3);
    CHECK(c.radio.tx_w_at(-18) == doctest::Approx(48.6e-3));
    CHECK(c.radio.tx_w_at(5) == doctest::Approx(100.8e-3));
    CHECK(c.radio.tx_w() == doctest::Approx(48.6e-3 + 18.0 / 23.0 * (100.8e-3 - 48.6e-3)));
    CHECK(c.wur(WurKind::radio).listen_w == 462e-9);
    CHECK(c.wur(WurKind::radio).decode_w == 49e-6);
    CHECK(c.wur(WurKind::radio).tx_standby_w == 690e-9);
    CHECK(c.wur(WurKind::radio).trigger_s_broadcast == 130e-6);
    CHECK(c.wur(WurKind::radio).trigger_s_addressed == 0.8e-3);
    CHECK(c.wur(WurKind::us).listen_w == 1640e-9);
    CHECK(c.wur(WurKind::us).decode_w == 14e-6);
    CHECK(c.wur(WurKind::us).trigger_s_addressed == 450e-3);
    CHECK(c.mbs.sleep_w == 36e-9);
    CHECK(c.mbs.active_w == 10.8e-6);
    CHECK(c.mbs.max_buffered_samples == 512);
    CHECK(c.mac.contikimac_interval_s == 0.1);
    CHECK(c.mac.strobe_expected_s() == 0.05);
    REQUIRE(c.harvesters.size() == 5);
    CHECK(c.harvesters[0].technology == "Photovoltaic");
    CHECK(c.harvesters[0].density_high_uw < 10.0 + 1e-12);
    CHECK_NOTHROW(c.check());
}

TEST_CASE("tx power is monotone in dBm") {
    const auto r = default_catalog().radio;
    double prev = 0.0;
    for (double dbm = -18; dbm <= 5; dbm += 0.5) {
        CHECK(r.tx_w_at(dbm) >= prev);
        prev = r.tx_w_at(dbm);
    }
}

TEST_CASE("configuration rows match the golden table") {
    const auto& rows = enumerate_configs();
    CHECK(rows.size() == 23);
    std::size_t seen = 0;
    const auto doc = text::read_file(ENWSN_FIXTURE_DIR "/hw_configs_golden.csv");
    for (const auto& line : text::lines(doc)) {
        if (line.text.front() == '#' || line.text.starts_with("id,")) continue;
        const auto f = text::split(line.text, ',');
        const int id = static_cast<int>(text::parse_int(f[0], line.number));
        const auto c = config_by_id(id);
        CHECK(c.id == id);
        CHECK(label(c.mcu) == f[1]);
        CHECK(label(c.radio) == f[2]);
        CHECK(label(c.wakeup) == f[3]);
        CHECK(c.software == Software::no_dbp);
        ++seen;
    }
    CHECK(seen == 23);
    CHECK(config_by_id(1) == HwConfig{1, McuMode::standby, RadioIdle::lpm1, Wakeup::none});
    CHECK(config_by_id(11) == HwConfig{11, McuMode::sleep, RadioIdle::lpm2, Wakeup::radio_addressed});
    CHECK(config_by_id(23) == HwConfig{23, McuMode::ml_hibernation, RadioIdle::lpm2, Wakeup::radio_addressed});
    CHECK_THROWS_AS(config_by_id(0), ConfigError);
    CHECK_THROWS_AS(config_by_id(24), ConfigError);
}

TEST_CASE("feasibility examples") {
    const auto cat = default_catalog();
    Workload light;
    light.sampling_period_s = 30.0;
    light.events = {{1.0 / 30.0, 0.04}};
    CHECK_FALSE(feasible(config_by_id(18).with(Software::dbp), light, cat).ok);
    CHECK(feasible(config_by_id(18).with(Software::dbp), light, cat).reason == kNoRetention);
    CHECK(feasible(config_by_id(4), light, cat).ok);

    Workload heavy;
    heavy.sampling_period_s = 0.001;
    heavy.events = {{1000.0, 1.0}};
    for (const auto& row : enumerate_configs()) CHECK(feasible(row.with(Software::mbs), heavy, cat).ok);

    Workload fast = light;
    fast.sampling_period_s = 0.1;
    CHECK(feasible(config_by_id(12), fast, cat).reason == kPeriodBelowWake);
    Workload busy = light;
    busy.events = {{2.0, 0.6}};
    CHECK(feasible(config_by_id(12), busy, cat).reason == kUtilizationOverrun);
}

TEST_CASE("property: feasibility is monotone in rates") {
    gen::Gen g(31);
    const auto cat = default_catalog();
    for (int rep = 0; rep < 500; ++rep) {
        Workload w;
        w.sampling_period_s = g.uniform(0.01, 60.0);
        for (int i = 0; i < 4; ++i) w.events.push_back({g.uniform(0.0, 3.0), g.uniform(0.0, 0.6)});
        const auto c = config_by_id(g.integer(1, 23)).with(static_cast<Software>(g.integer(0, 2)));
        Workload less = w;
        for (auto& e : less.events) e.rate_per_s *= g.uniform(0.0, 1.0);
        if (feasible(c, w, cat).ok) CHECK(feasible(c, less, cat).ok);
    }
}

TEST_CASE("catalog overrides") {
    auto c = default_catalog();
    apply_overrides(c, "# comment\nmcu.sleep_w = 2e-6\nradio.frame_filtering = false  # off\nwur.radio.trigger_addressed_s=1e-3\n");
    CHECK(c.mcu.sleep_w == 2e-6);
    CHECK_FALSE(c.radio.frame_filtering);
    CHECK(c.radio_wur.trigger_s_addressed == 1e-3);
    CHECK_THROWS_AS(apply_overrides(c, "mcu.nope_w = 1\n"), ParseError);
    CHECK_THROWS_AS(apply_overrides(c, "mcu.sleep_w 1\n"), ParseError);
    CHECK_THROWS_AS(apply_overrides(c, "mcu.sleep_w = abc\n"), ParseError);
    auto d = default_catalog();
    CHECK_THROWS_AS(apply_overrides(d, "radio.lpm2_w = 1\n"), ConfigError);  // above lpm1

    // dump -> apply reproduces the catalog
    auto e = default_catalog();
    apply_overrides(e, dump_catalog(c));
    CHECK(dump_catalog(e) == dump_catalog(c));
    const auto keys = catalog_keys();
    CHECK(std::set<std::string>(keys.begin(), keys.end()).size() == keys.size());
    for (const auto& k : keys) {
        const auto suffix_ok = k.ends_with("_w") || k.ends_with("_s") || k.ends_with("_bps") || k.ends_with("_dbm") ||
                               k.ends_with("_m") || k.ends_with("bytes") || k.ends_with("samples") ||
                               k == "radio.frame_filtering";
        CHECK_MESSAGE(suffix_ok, k);
    }
}

TEST_CASE("catalog invariants are enforced") {
    auto c = default_catalog();
    c.mcu.sleep_w = c.mcu.standby_w * 2;
    CHECK_THROWS_AS(c.check(), ConfigError);
    c = default_catalog();
    c.us.decode_w = c.us.listen_w / 2;
    CHECK_THROWS_AS(c.check(), ConfigError);
    c = default_catalog();
    c.mac.channel_check_s = 0.2;
    CHECK_THROWS_AS(c.check(), ConfigError);
    c = default_catalog();
    c.mbs.active_w = c.mbs.sleep_w / 2;
    CHECK_THROWS_AS(c.check(), ConfigError);
}

TEST_CASE("mode helpers") {
    CHECK(parse_software("no-dbp") == Software::no_dbp);
    CHECK(parse_software("mbs") == Software::mbs);
    CHECK_THROWS_AS(parse_software("xyz"), ConfigError);
    CHECK(retains_state(McuMode::sleep));
    CHECK_FALSE(retains_state(McuMode::ml_hibernation));
    CHECK(addressed(Wakeup::radio_addressed));
    CHECK_FALSE(addressed(Wakeup::us));
    CHECK_FALSE(wur_kind(Wakeup::none));
    CHECK(*wur_kind(Wakeup::us_addressed) == WurKind::us);
    CHECK(radio_power_gated(config_by_id(11)));
    CHECK_FALSE(radio_power_gated(config_by_id(4)));
}

}  // TEST_SUITE
