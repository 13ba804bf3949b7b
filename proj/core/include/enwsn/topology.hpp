#pragma once

#include "enwsn/node_id.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace enwsn::topo {

struct Position {
    double x = 0.0;
    double y = 0.0;
};

using Link = std::pair<NodeId, NodeId>;
using LinkQuality = std::map<Link, double>;  // both directions present after loading
using Adjacency = std::map<NodeId, std::set<NodeId>>;

struct Topology {
    std::map<NodeId, Position> positions;
    NodeId sink{};
    double comm_range_m = 15.0;
    double interference_range_m = 30.0;
    std::optional<LinkQuality> link_quality;

    // Throws ValidationError on a missing sink, interference < comm range, or
    // asymmetric / out-of-range link qualities.
    void check() const;

    std::vector<NodeId> nodes() const;
    // Every node except the sink, ascending.
    std::vector<NodeId> sensor_nodes() const;

    std::optional<double> quality(NodeId u, NodeId v) const;
};

struct Graphs {
    Adjacency comm;
    Adjacency interference;
};

// Edge iff euclidean distance <= range; symmetric, no self loops.
// Throws ValidationError on an empty position set or non-positive ranges.
Graphs unit_disk_graph(const std::map<NodeId, Position>& positions, double comm_range, double interference_range);

// Graph used for routing and overhearing: the link-quality graph (q > 0) when
// qualities are given, the unit-disk communication graph otherwise.
Adjacency comm_graph(const Topology& topology);

struct CollectionTree {
    NodeId sink{};
    std::map<NodeId, NodeId> parent;        // sink excluded
    std::map<NodeId, std::size_t> depth;    // sink has depth 0
    std::map<NodeId, std::size_t> subtree_size;  // strict descendants

    std::size_t max_depth() const;
    std::map<std::size_t, std::size_t> depth_histogram() const;  // depth -> node count (sink excluded)
    std::vector<NodeId> children(NodeId n) const;
};

// Shortest-hop BFS tree without link qualities, minimum expected-transmission
// (sum of 1/q) tree with them. Ties go to the smallest parent id.
// Throws UnreachableNodeError listing every node that cannot reach the sink.
CollectionTree build_tree(const Topology& topology);

struct NodeLoads {
    double originated_per_s = 0.0;
    double forwarded_per_s = 0.0;
    double overheard_per_s = 0.0;
    double intended_rx_per_s = 0.0;
    double link_tx_multiplier = 1.0;  // expected link-level transmissions per packet on the uplink

    // Logical packets this node sends uplink per second.
    double uplink_per_s() const { return originated_per_s + forwarded_per_s; }
};

// Per-node traffic loads from each node's own packet rate. Overhearing counts
// every link-level uplink transmission of a communication neighbor whose
// parent is not this node. The sink gets no entry.
// Throws ValidationError for rates of unknown nodes or negative rates.
std::map<NodeId, NodeLoads> node_loads(const CollectionTree& tree, const Topology& topology,
                                       const std::map<NodeId, double>& tx_rate_per_s);

// `node_id,x,y` with `# sink=`, `# comm_range_m=`, `# interference_range_m=` header comments.
Topology parse_topology(std::string_view doc);
std::string serialize_topology(const Topology& topology);
// `u,v,quality`; missing reverse directions are mirrored.
LinkQuality parse_link_quality(std::string_view doc);

// `node_id,parent,depth,subtree_size`.
std::string tree_csv(const CollectionTree& tree);

}  // namespace enwsn::topo
