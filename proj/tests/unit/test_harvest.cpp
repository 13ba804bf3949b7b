#include "generators.hpp"

#include "enwsn/error.hpp"
#include "enwsn/harvest.hpp"
#include "enwsn/text_io.hpp"

#include <doctest.h>

using namespace enwsn;
using namespace enwsn::harvest;

namespace {

SensorTrace light(std::vector<double> vs, double period = 30.0) {
    SensorTrace t;
    t.period_s = period;
    for (std::size_t i = 0; i < vs.size(); ++i) t.samples.push_back({period * double(i), vs[i]});
    return t;
}

HarvestModel random_model(gen::Gen& g) {
    std::vector<PiecewiseLinear::Point> pts{{0, 0}};
    double x = 0, y = 0;
    for (int i = 0; i < g.integer(1, 6); ++i) {
        x += g.uniform(10, 2000);
        y += g.uniform(0, 1e-3);
        pts.push_back({x, y});
    }
    HarvestModel m{PiecewiseLinear(pts)};
    m.efficiency = g.uniform(0.05, 1.0);
    m.cells = g.integer(1, 5);
    m.area_scale = g.uniform(0.05, 2.0);
    return m;
}

}  // namespace

TEST_SUITE("harvest") {

TEST_CASE("harvest power examples") {
    HarvestModel m{PiecewiseLinear({{0, 0}, {200, 40e-6}})};
    CHECK(harvest_power(0, m) == 0.0);
    CHECK(harvest_power(100, m) == doctest::Approx(20e-6 * 0.79).epsilon(1e-12));
    CHECK(harvest_power(1e6, m) == doctest::Approx(40e-6 * 0.79));
    HarvestModel small = m;
    small.area_scale = 0.1;
    CHECK(harvest_power(150, small) == doctest::Approx(harvest_power(150, m) / 10).epsilon(1e-12));
    CHECK_THROWS_AS(harvest_power(-1, m), ValidationError);
}

TEST_CASE("model validation") {
    CHECK_NOTHROW(default_model().check());
    HarvestModel bad{PiecewiseLinear({{1, 0}, {2, 1}})};
    CHECK_THROWS_AS(bad.check(), ConfigError);
    HarvestModel dec{PiecewiseLinear({{0, 0}, {1, 2}, {2, 1}})};
    CHECK_THROWS_AS(dec.check(), ConfigError);
    auto m = default_model();
    m.efficiency = 0;
    CHECK_THROWS_AS(m.check(), ConfigError);
    m = default_model();
    m.cells = 0;
    CHECK_THROWS_AS(m.check(), ConfigError);
    m = default_model();
    m.area_scale = 0;
    CHECK_THROWS_AS(m.check(), ConfigError);
}

TEST_CASE("illustrative curve fixture matches the built-in curve") {
    const auto file = PiecewiseLinear::parse_csv(text::read_file(ENWSN_FIXTURE_DIR "/am1816_illustrative.csv"));
    const auto built = illustrative_indoor_pv_curve();
    REQUIRE(file.points().size() == built.points().size());
    for (std::size_t i = 0; i < built.points().size(); ++i) CHECK(file.points()[i] == built.points()[i]);
}

TEST_CASE("mean harvest is a trapezoidal time average") {
    HarvestModel m{PiecewiseLinear({{0, 0}, {100, 100e-6}})};
    m.efficiency = 1.0;
    CHECK(mean_harvest(light({0, 100}), m) == doctest::Approx(50e-6));
    CHECK(mean_harvest(light({50, 50, 50}), m) == doctest::Approx(50e-6));
    CHECK(mean_harvest(light({80}), m) == doctest::Approx(80e-6));
    CHECK(mean_harvest(light({-20, 0}), m) == 0.0);
}

TEST_CASE("neutrality boundaries") {
    const auto m = default_model();
    std::map<NodeId, SensorTrace> traces{{NodeId{1}, light({0, 0, 0})}, {NodeId{2}, light({500, 500})}};
    const auto r = neutrality({{NodeId{1}, 0.0}, {NodeId{2}, 0.0}}, traces, m);
    CHECK(r.nodes[0].neutral);
    CHECK(*r.nodes[0].cells_needed == 1);
    CHECK(*r.nodes[1].cells_needed == 1);

    const double per_cell = mean_harvest(traces.at(NodeId{2}), m);
    const auto r2 = neutrality({{NodeId{1}, 1e-6}, {NodeId{2}, 3.5 * per_cell}}, traces, m);
    CHECK_FALSE(r2.nodes[0].neutral);
    CHECK_FALSE(r2.nodes[0].cells_needed);
    CHECK(r2.unsustainable_nodes == 1);
    CHECK_FALSE(r2.nodes[1].neutral);
    CHECK(*r2.nodes[1].cells_needed == 4);
    CHECK(r2.total_cells == 4);

    try {
        neutrality({{NodeId{1}, 1e-6}, {NodeId{7}, 1e-6}, {NodeId{9}, 1e-6}}, traces, m);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("7,9") != std::string::npos);
    }
}

TEST_CASE("report outputs parse back") {
    const auto m = default_model();
    std::map<NodeId, SensorTrace> traces{{NodeId{1}, light({10, 20})}, {NodeId{2}, light({500, 700})}};
    const auto r = neutrality({{NodeId{1}, 3e-6}, {NodeId{2}, 2e-6}}, traces, m);
    const auto csv = report_csv(r);
    std::size_t rows = 0;
    for (const auto& l : text::lines(csv)) {
        if (l.text.starts_with('#') || l.text.starts_with("node_id")) continue;
        const auto f = text::split(l.text, ',');
        REQUIRE(f.size() == 5);
        CHECK(text::parse_double(f[1], l.number) > 0);
        ++rows;
    }
    CHECK(rows == 2);
    const auto dat = series_dat(r);
    for (const auto& l : text::lines(dat)) {
        if (l.text.starts_with('#')) continue;
        const auto f = text::split_ws(l.text);
        REQUIRE(f.size() == 4);
        CHECK(text::parse_double(f[2], l.number) > 0);
        CHECK(text::parse_double(f[3], l.number) > 0);
    }
    const auto gp = gnuplot_script({{"DBP", "a.dat"}, {"MBS", "b.dat"}}, "x.png");
    CHECK(gp.find("set logscale y") != std::string::npos);
    CHECK(gp.find("'b.dat'") != std::string::npos);
}

TEST_CASE("property: harvest power monotone in lux, cells, efficiency, area") {
    gen::Gen g(44);
    for (int rep = 0; rep < 300; ++rep) {
        auto m = random_model(g);
        const double a = g.uniform(0, 20000), b = a + g.uniform(0, 5000);
        CHECK(harvest_power(b, m) >= harvest_power(a, m));
        const double p = harvest_power(a, m);
        auto up = m;
        up.cells += g.integer(0, 3);
        CHECK(harvest_power(a, up) >= p);
        up = m;
        up.efficiency = std::min(1.0, m.efficiency * g.uniform(1, 2));
        CHECK(harvest_power(a, up) >= p);
        up = m;
        up.area_scale *= g.uniform(1, 3);
        CHECK(harvest_power(a, up) >= p);
    }
}

TEST_CASE("property: lower consumption never needs more cells") {
    gen::Gen g(45);
    for (int rep = 0; rep < 200; ++rep) {
        const auto m = random_model(g);
        std::vector<double> vs;
        for (int i = 0; i < 50; ++i) vs.push_back(g.uniform(0, 3000));
        std::map<NodeId, SensorTrace> traces{{NodeId{1}, light(vs)}};
        const double c = g.uniform(0, 5e-3);
        const auto hi = neutrality({{NodeId{1}, c}}, traces, m);
        const auto lo = neutrality({{NodeId{1}, c * g.uniform(0, 1)}}, traces, m);
        if (hi.nodes[0].cells_needed) CHECK(*lo.nodes[0].cells_needed <= *hi.nodes[0].cells_needed);
        if (hi.nodes[0].neutral) CHECK(lo.nodes[0].neutral);
    }
}

TEST_CASE("property: scaling the curve output by k scales the mean by k") {
    gen::Gen g(46);
    for (int rep = 0; rep < 100; ++rep) {
        const auto m = random_model(g);
        const double k = g.uniform(0.1, 10);
        std::vector<PiecewiseLinear::Point> pts(m.curve.points().begin(), m.curve.points().end());
        for (auto& p : pts) p.second *= k;
        auto scaled = m;
        scaled.curve = PiecewiseLinear(pts);
        std::vector<double> vs;
        for (int i = 0; i < 40; ++i) vs.push_back(g.uniform(0, 5000));
        const auto tr = light(vs);
        CHECK(mean_harvest(tr, scaled) == doctest::Approx(k * mean_harvest(tr, m)).epsilon(1e-12));
    }
}

}  // TEST_SUITE
