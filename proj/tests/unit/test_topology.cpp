#include "generators.hpp"

#include "enwsn/error.hpp"
#include "enwsn/text_io.hpp"
#include "enwsn/topology.hpp"

#include <doctest.h>

#include <cmath>
#include <string>

using namespace enwsn;
using namespace enwsn::topo;

namespace {

Topology load(const char* name) { return parse_topology(text::read_file(std::string(ENWSN_FIXTURE_DIR "/") + name)); }

Topology star(unsigned k) {
    // Hub 1 is the only node in range of the sink; leaves 2..k+1 ring the hub
    // tightly so every leaf hears every other leaf.
    Topology t;
    t.sink = NodeId{0};
    t.positions[NodeId{0}] = {0, 0};
    t.positions[NodeId{1}] = {12, 0};
    for (unsigned i = 0; i < k; ++i) {
        const double a = 2.0 * 3.141592653589793 * i / k;
        t.positions[NodeId{2 + i}] = {20 + 3 * std::cos(a), 3 * std::sin(a)};
    }
    return t;
}

}  // namespace

TEST_SUITE("topology") {

TEST_CASE("unit disk examples") {
    std::map<NodeId, Position> p{{NodeId{1}, {0, 0}}, {NodeId{2}, {10, 0}}};
    auto g = unit_disk_graph(p, 15, 30);
    CHECK(g.comm.at(NodeId{1}).contains(NodeId{2}));
    CHECK(g.comm.at(NodeId{2}).contains(NodeId{1}));

    p[NodeId{2}] = {20, 0};
    g = unit_disk_graph(p, 15, 30);
    CHECK(g.comm.at(NodeId{1}).empty());
    CHECK(g.interference.at(NodeId{1}).contains(NodeId{2}));

    g = unit_disk_graph({{NodeId{1}, {3, 3}}}, 15, 30);
    CHECK(g.comm.at(NodeId{1}).empty());
    CHECK(g.interference.at(NodeId{1}).empty());

    g = unit_disk_graph({{NodeId{1}, {3, 3}}, {NodeId{2}, {3, 3}}}, 15, 30);
    CHECK(g.comm.at(NodeId{1}).contains(NodeId{2}));

    CHECK_THROWS_AS(unit_disk_graph({}, 15, 30), ValidationError);
    CHECK_THROWS_AS(unit_disk_graph(p, 0, 30), ValidationError);
}

TEST_CASE("property: unit disk graph matches pairwise distances") {
    gen::Gen g(4);
    for (int rep = 0; rep < 30; ++rep) {
        std::map<NodeId, Position> p;
        const int n = g.integer(1, 25);
        for (int i = 0; i < n; ++i) p[NodeId{unsigned(i)}] = {g.uniform(0, 60), g.uniform(0, 60)};
        const double r = g.uniform(5, 20);
        const auto gr = unit_disk_graph(p, r, 2 * r);
        for (const auto& [a, pa] : p)
            for (const auto& [b, pb] : p) {
                const double d = std::hypot(pa.x - pb.x, pa.y - pb.y);
                CHECK(gr.comm.at(a).contains(b) == (a != b && d <= r));
                CHECK(gr.interference.at(a).contains(b) == (a != b && d <= 2 * r));
            }
    }
}

TEST_CASE("chain fixture") {
    const auto t = load("chain_topology.csv");
    const auto tree = build_tree(t);
    CHECK(tree.max_depth() == 2);
    CHECK(tree.parent.at(NodeId{2}) == NodeId{1});
    CHECK(tree.parent.at(NodeId{1}) == NodeId{0});
    CHECK(tree.subtree_size.at(NodeId{1}) == 1);
    CHECK(tree.subtree_size.at(NodeId{2}) == 0);
    CHECK(tree.depth.at(NodeId{0}) == 0);

    const auto loads = node_loads(tree, t, {{NodeId{1}, 0.0}, {NodeId{2}, 0.5}});
    CHECK(loads.at(NodeId{1}).forwarded_per_s == 0.5);
    CHECK(loads.at(NodeId{1}).intended_rx_per_s == 0.5);
    CHECK(loads.at(NodeId{1}).overheard_per_s == 0.0);
    CHECK(loads.at(NodeId{2}).forwarded_per_s == 0.0);
    CHECK(loads.at(NodeId{2}).intended_rx_per_s == 0.0);
    CHECK(loads.at(NodeId{2}).overheard_per_s == 0.5);  // its parent relaying to the sink
    CHECK_FALSE(loads.contains(NodeId{0}));
}

TEST_CASE("tunnel fixture depth") {
    const auto t = load("tunnel_topology.csv");
    CHECK(t.sensor_nodes().size() == 40);
    CHECK(build_tree(t).max_depth() == 15);
}

TEST_CASE("Intel fixture with link qualities") {
    auto t = load("intel_topology.csv");
    t.link_quality = parse_link_quality(text::read_file(ENWSN_FIXTURE_DIR "/intel_link_quality.csv"));
    t.check();
    const auto tree = build_tree(t);
    CHECK(tree.max_depth() == 4);
    CHECK(t.sensor_nodes().size() == 54);
    std::map<NodeId, double> rates;
    for (auto n : t.sensor_nodes()) rates[n] = 1.0;
    for (const auto& [n, l] : node_loads(tree, t, rates)) {
        CHECK(l.link_tx_multiplier >= 1.0);
        CHECK(l.link_tx_multiplier == doctest::Approx(1.0 / *t.quality(n, tree.parent.at(n))));
    }
}

TEST_CASE("min-ETX prefers two good hops over one bad hop") {
    Topology t;
    t.sink = NodeId{0};
    t.positions = {{NodeId{0}, {0, 0}}, {NodeId{1}, {5, 0}}, {NodeId{2}, {10, 0}}};
    t.link_quality = LinkQuality{{{NodeId{0}, NodeId{1}}, 0.9}, {{NodeId{1}, NodeId{0}}, 0.9},
                                 {{NodeId{1}, NodeId{2}}, 0.9}, {{NodeId{2}, NodeId{1}}, 0.9},
                                 {{NodeId{0}, NodeId{2}}, 0.3}, {{NodeId{2}, NodeId{0}}, 0.3}};
    auto tree = build_tree(t);
    CHECK(tree.parent.at(NodeId{2}) == NodeId{1});
    (*t.link_quality)[{NodeId{0}, NodeId{2}}] = 0.8;
    (*t.link_quality)[{NodeId{2}, NodeId{0}}] = 0.8;
    tree = build_tree(t);
    CHECK(tree.parent.at(NodeId{2}) == NodeId{0});
}

TEST_CASE("BFS ties go to the smallest parent id") {
    Topology t;
    t.sink = NodeId{0};
    t.positions = {{NodeId{0}, {0, 0}}, {NodeId{5}, {10, 5}}, {NodeId{3}, {10, -5}}, {NodeId{9}, {20, 0}}};
    CHECK(build_tree(t).parent.at(NodeId{9}) == NodeId{3});
}

TEST_CASE("unreachable nodes are listed") {
    Topology t;
    t.sink = NodeId{0};
    t.positions = {{NodeId{0}, {0, 0}}, {NodeId{1}, {10, 0}}, {NodeId{7}, {100, 0}}, {NodeId{8}, {105, 0}}};
    try {
        build_tree(t);
        FAIL("expected UnreachableNodeError");
    } catch (const UnreachableNodeError& e) {
        const std::string w = e.what();
        CHECK(w.find('7') != std::string::npos);
        CHECK(w.find('8') != std::string::npos);
    }
}

TEST_CASE("star: each leaf overhears the other leaves") {
    for (unsigned k : {2u, 4u, 6u}) {
        const auto t = star(k);
        const auto tree = build_tree(t);
        const double r = 0.25;
        std::map<NodeId, double> rates;
        for (auto n : t.sensor_nodes()) rates[n] = n.value == 1 ? 0.0 : r;
        const auto loads = node_loads(tree, t, rates);
        for (unsigned i = 0; i < k; ++i) {
            const auto& l = loads.at(NodeId{2 + i});
            CHECK(tree.parent.at(NodeId{2 + i}) == NodeId{1});
            // other leaves plus the hub relaying all k leaves
            CHECK(l.overheard_per_s == doctest::Approx((k - 1) * r + k * r));
        }
        CHECK(loads.at(NodeId{1}).forwarded_per_s == doctest::Approx(k * r));
        CHECK(loads.at(NodeId{1}).overheard_per_s == 0.0);
    }
}

TEST_CASE("errors for bad rates") {
    const auto t = load("chain_topology.csv");
    const auto tree = build_tree(t);
    CHECK_THROWS_AS(node_loads(tree, t, {{NodeId{42}, 1.0}}), ValidationError);
    CHECK_THROWS_AS(node_loads(tree, t, {{NodeId{1}, -1.0}}), ValidationError);
    CHECK_THROWS_AS(node_loads(tree, t, {{NodeId{0}, 1.0}}), ValidationError);
}

TEST_CASE("topology file round trip and validation") {
    const auto t = load("tunnel_topology.csv");
    const auto again = parse_topology(serialize_topology(t));
    CHECK(again.sink == t.sink);
    CHECK(again.comm_range_m == t.comm_range_m);
    CHECK(again.positions.size() == t.positions.size());
    CHECK(build_tree(again).parent == build_tree(t).parent);

    CHECK_THROWS_AS(parse_topology("# sink=9\nnode_id,x,y\n0,0,0\n"), ValidationError);
    CHECK_THROWS_AS(parse_topology("# sink=0\n# comm_range_m=20\n# interference_range_m=10\nnode_id,x,y\n0,0,0\n"),
                    ValidationError);
    CHECK_THROWS_AS(parse_topology("# sink=0\nnode_id,x,y\n0,0,zero\n"), ParseError);
    CHECK_THROWS_AS(parse_topology("# sink=0\nnode_id,x,y\n0,0,0\n0,1,1\n"), ValidationError);
}

TEST_CASE("link quality mirrors missing directions") {
    const auto q = parse_link_quality("u,v,quality\n1,2,0.5\n");
    CHECK(q.at({NodeId{2}, NodeId{1}}) == 0.5);
    CHECK_THROWS(parse_link_quality("u,v,quality\n1,2,0\n"));
    CHECK_THROWS(parse_link_quality("u,v,quality\n1,2,1.5\n"));
}

TEST_CASE("tree csv") {
    const auto tree = build_tree(load("chain_topology.csv"));
    CHECK(tree_csv(tree) == "node_id,parent,depth,subtree_size\n1,0,1,1\n2,1,2,0\n");
}

TEST_CASE("property: tree invariants, conservation, linearity, determinism") {
    gen::Gen g(17);
    for (int rep = 0; rep < 60; ++rep) {
        const auto t = gen::random_topology(g, static_cast<unsigned>(g.integer(1, 14)), 40.0);
        const auto tree = build_tree(t);
        CHECK(build_tree(t).parent == tree.parent);
        const auto adj = comm_graph(t);
        for (const auto& [n, p] : tree.parent) {
            CHECK(adj.at(n).contains(p));
            CHECK(tree.depth.at(n) == tree.depth.at(p) + 1);
        }
        std::map<NodeId, double> rates;
        double total = 0.0;
        for (auto n : t.sensor_nodes()) total += rates[n] = g.uniform(0.0, 1.0);
        const auto loads = node_loads(tree, t, rates);
        double into_sink = 0.0;
        for (const auto& [n, l] : loads) {
            CHECK(l.forwarded_per_s >= 0.0);
            CHECK(l.overheard_per_s >= 0.0);
            if (tree.parent.at(n) == t.sink) into_sink += l.uplink_per_s();
            double desc = 0.0;
            for (const auto& [m, _] : loads) {
                for (NodeId c = tree.parent.at(m); c != t.sink; c = tree.parent.at(c))
                    if (c == n) desc += rates.at(m);
            }
            CHECK(l.forwarded_per_s == doctest::Approx(desc));
        }
        CHECK(into_sink == doctest::Approx(total));

        std::map<NodeId, double> doubled;
        for (const auto& [n, r] : rates) doubled[n] = 2 * r;
        const auto loads2 = node_loads(tree, t, doubled);
        for (const auto& [n, l] : loads) {
            const auto& l2 = loads2.at(n);
            CHECK(l2.originated_per_s == 2 * l.originated_per_s);
            CHECK(l2.forwarded_per_s == doctest::Approx(2 * l.forwarded_per_s));
            CHECK(l2.overheard_per_s == doctest::Approx(2 * l.overheard_per_s));
            CHECK(l2.intended_rx_per_s == doctest::Approx(2 * l.intended_rx_per_s));
        }
    }
}

}  // TEST_SUITE
