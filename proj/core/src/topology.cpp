#include "enwsn/topology.hpp"

#include "enwsn/error.hpp"
#include "enwsn/text_io.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <queue>

namespace enwsn::topo {

void Topology::check() const {
    if (positions.empty()) throw ValidationError("topology has no nodes");
    if (!positions.contains(sink)) throw ValidationError("sink " + sink.str() + " has no position");
    if (!(comm_range_m > 0.0)) throw ValidationError("comm range must be > 0");
    if (interference_range_m < comm_range_m) throw ValidationError("interference range must be >= comm range");
    if (link_quality) {
        for (const auto& [link, q] : *link_quality) {
            if (!(q > 0.0 && q <= 1.0))
                throw ValidationError("link quality " + link.first.str() + "-" + link.second.str() + " outside (0,1]");
            if (!link_quality->contains({link.second, link.first}))
                throw ValidationError("link quality missing reverse of " + link.first.str() + "-" + link.second.str());
            if (!positions.contains(link.first) || !positions.contains(link.second))
                throw ValidationError("link quality references unknown node");
        }
    }
}

std::vector<NodeId> Topology::nodes() const {
    std::vector<NodeId> out;
    out.reserve(positions.size());
    for (const auto& [id, _] : positions) out.push_back(id);
    return out;
}

std::vector<NodeId> Topology::sensor_nodes() const {
    std::vector<NodeId> out;
    for (const auto& [id, _] : positions)
        if (id != sink) out.push_back(id);
    return out;
}

std::optional<double> Topology::quality(NodeId u, NodeId v) const {
    if (!link_quality) return std::nullopt;
    const auto it = link_quality->find({u, v});
    if (it == link_quality->end()) return std::nullopt;
    return it->second;
}

Graphs unit_disk_graph(const std::map<NodeId, Position>& positions, double comm_range, double interference_range) {
    if (positions.empty()) throw ValidationError("unit disk graph: no positions");
    if (!(comm_range > 0.0) || !(interference_range > 0.0)) throw ValidationError("unit disk graph: ranges must be > 0");
    Graphs g;
    for (const auto& [id, _] : positions) {
        g.comm[id];
        g.interference[id];
    }
    for (auto a = positions.begin(); a != positions.end(); ++a) {
        for (auto b = std::next(a); b != positions.end(); ++b) {
            const double d = std::hypot(a->second.x - b->second.x, a->second.y - b->second.y);
            if (d <= comm_range) {
                g.comm[a->first].insert(b->first);
                g.comm[b->first].insert(a->first);
            }
            if (d <= interference_range) {
                g.interference[a->first].insert(b->first);
                g.interference[b->first].insert(a->first);
            }
        }
    }
    return g;
}

Adjacency comm_graph(const Topology& topology) {
    if (!topology.link_quality)
        return unit_disk_graph(topology.positions, topology.comm_range_m, topology.interference_range_m).comm;
    Adjacency adj;
    for (const auto& [id, _] : topology.positions) adj[id];
    for (const auto& [link, q] : *topology.link_quality) {
        if (q > 0.0 && link.first != link.second) {
            adj[link.first].insert(link.second);
            adj[link.second].insert(link.first);
        }
    }
    return adj;
}

std::size_t CollectionTree::max_depth() const {
    std::size_t d = 0;
    for (const auto& [_, depth_] : depth) d = std::max(d, depth_);
    return d;
}

std::map<std::size_t, std::size_t> CollectionTree::depth_histogram() const {
    std::map<std::size_t, std::size_t> h;
    for (const auto& [id, d] : depth)
        if (id != sink) ++h[d];
    return h;
}

std::vector<NodeId> CollectionTree::children(NodeId n) const {
    std::vector<NodeId> out;
    for (const auto& [c, p] : parent)
        if (p == n) out.push_back(c);
    return out;
}

namespace {

void fill_depth_and_subtrees(CollectionTree& tree) {
    // Depth via repeated parent walks is O(n * depth); networks here are small.
    tree.depth.clear();
    tree.depth[tree.sink] = 0;
    for (const auto& [n, _] : tree.parent) {
        std::size_t d = 0;
        for (NodeId cur = n; cur != tree.sink; cur = tree.parent.at(cur)) ++d;
        tree.depth[n] = d;
    }
    tree.subtree_size.clear();
    tree.subtree_size[tree.sink] = tree.parent.size();
    for (const auto& [n, _] : tree.parent) tree.subtree_size[n] = 0;
    for (const auto& [n, _] : tree.parent) {
        for (NodeId cur = tree.parent.at(n); cur != tree.sink; cur = tree.parent.at(cur)) ++tree.subtree_size[cur];
    }
}

void throw_unreachable(const Topology& topology, const CollectionTree& tree) {
    std::string ids;
    for (const auto& [id, _] : topology.positions) {
        if (id != topology.sink && !tree.parent.contains(id)) ids += (ids.empty() ? "" : ",") + id.str();
    }
    if (!ids.empty()) throw UnreachableNodeError("nodes cannot reach sink " + topology.sink.str() + ": " + ids);
}

}  // namespace

CollectionTree build_tree(const Topology& topology) {
    topology.check();
    const Adjacency adj = comm_graph(topology);
    CollectionTree tree;
    tree.sink = topology.sink;

    if (!topology.link_quality) {
        // Level-synchronous BFS; visiting the frontier in ascending id order
        // hands every node to its smallest-id parent on the previous level.
        std::set<NodeId> visited{topology.sink};
        std::vector<NodeId> frontier{topology.sink};
        while (!frontier.empty()) {
            std::sort(frontier.begin(), frontier.end());
            std::vector<NodeId> next;
            for (NodeId u : frontier) {
                for (NodeId v : adj.at(u)) {
                    if (visited.insert(v).second) {
                        tree.parent[v] = u;
                        next.push_back(v);
                    }
                }
            }
            frontier = std::move(next);
        }
    } else {
        // Dijkstra on expected transmissions. Parents are chosen after the
        // distances settle so that equal-cost alternatives resolve to the
        // smallest id regardless of relaxation order.
        std::map<NodeId, double> dist;
        for (const auto& [id, _] : topology.positions) dist[id] = std::numeric_limits<double>::infinity();
        dist[topology.sink] = 0.0;
        using Item = std::pair<double, NodeId>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        pq.push({0.0, topology.sink});
        std::set<NodeId> done;
        while (!pq.empty()) {
            auto [d, u] = pq.top();
            pq.pop();
            if (!done.insert(u).second) continue;
            for (NodeId v : adj.at(u)) {
                const double nd = d + 1.0 / *topology.quality(v, u);
                if (nd < dist[v]) {
                    dist[v] = nd;
                    pq.push({nd, v});
                }
            }
        }
        for (const auto& [v, dv] : dist) {
            if (v == topology.sink || std::isinf(dv)) continue;
            std::optional<NodeId> best;
            double best_cost = std::numeric_limits<double>::infinity();
            for (NodeId u : adj.at(v)) {  // ascending ids
                if (std::isinf(dist[u]) || dist[u] >= dv) continue;
                const double c = dist[u] + 1.0 / *topology.quality(v, u);
                if (c < best_cost) {
                    best_cost = c;
                    best = u;
                }
            }
            tree.parent[v] = *best;
        }
    }
    throw_unreachable(topology, tree);
    fill_depth_and_subtrees(tree);
    return tree;
}

std::map<NodeId, NodeLoads> node_loads(const CollectionTree& tree, const Topology& topology,
                                       const std::map<NodeId, double>& tx_rate_per_s) {
    std::map<NodeId, NodeLoads> loads;
    for (const auto& [n, _] : tree.parent) loads[n];
    for (const auto& [n, r] : tx_rate_per_s) {
        if (!loads.contains(n)) throw ValidationError("tx rate given for unknown node " + n.str());
        if (!(r >= 0.0)) throw ValidationError("tx rate for node " + n.str() + " must be >= 0");
        loads[n].originated_per_s = r;
    }
    for (auto& [n, load] : loads) {
        if (const auto q = topology.quality(n, tree.parent.at(n))) load.link_tx_multiplier = 1.0 / *q;
    }
    for (const auto& [n, load] : loads) {
        for (NodeId cur = tree.parent.at(n); cur != tree.sink; cur = tree.parent.at(cur))
            loads[cur].forwarded_per_s += load.originated_per_s;
    }
    for (auto& [n, load] : loads) load.intended_rx_per_s = load.forwarded_per_s;

    const Adjacency adj = comm_graph(topology);
    for (auto& [n, load] : loads) {
        double heard = 0.0;
        for (NodeId u : adj.at(n)) {
            if (u == tree.sink) continue;
            const auto& lu = loads.at(u);
            if (tree.parent.at(u) == n) continue;
            heard += lu.uplink_per_s() * lu.link_tx_multiplier;
        }
        load.overheard_per_s = heard;
    }
    return loads;
}

Topology parse_topology(std::string_view doc) {
    Topology t;
    bool sink_set = false;
    bool header_seen = false;
    for (const auto& line : text::lines(doc)) {
        auto s = text::trim(line.text);
        if (s.front() == '#') {
            s = text::trim(s.substr(1));
            const auto eq = s.find('=');
            if (eq == std::string_view::npos) continue;
            const auto key = text::trim(s.substr(0, eq));
            const auto val = text::trim(s.substr(eq + 1));
            if (key == "sink") {
                t.sink = NodeId{static_cast<std::uint32_t>(text::parse_int(val, line.number))};
                sink_set = true;
            } else if (key == "comm_range_m") {
                t.comm_range_m = text::parse_double(val, line.number);
            } else if (key == "interference_range_m") {
                t.interference_range_m = text::parse_double(val, line.number);
            }
            continue;
        }
        const auto f = text::split(s, ',');
        if (!header_seen) {
            header_seen = true;
            if (f.size() == 3 && f[0] == "node_id") continue;
        }
        if (f.size() != 3) throw ParseError("expected node_id,x,y", line.number);
        const auto id = text::parse_int(f[0], line.number);
        if (id < 0 || id > 0xFFFFFFFFLL) throw ParseError("node id out of range", line.number);
        const NodeId nid{static_cast<std::uint32_t>(id)};
        if (t.positions.contains(nid)) throw ValidationError("line " + std::to_string(line.number) + ": duplicate node id " + nid.str());
        t.positions[nid] = {text::parse_double(f[1], line.number), text::parse_double(f[2], line.number)};
    }
    if (!sink_set) throw ParseError("topology: missing '# sink=<id>' header");
    t.check();
    return t;
}

std::string serialize_topology(const Topology& topology) {
    std::string out = "# sink=" + topology.sink.str() + "\n# comm_range_m=" + text::format_exact(topology.comm_range_m) +
                      "\n# interference_range_m=" + text::format_exact(topology.interference_range_m) + "\nnode_id,x,y\n";
    for (const auto& [id, p] : topology.positions)
        out += id.str() + ',' + text::format_exact(p.x) + ',' + text::format_exact(p.y) + '\n';
    return out;
}

LinkQuality parse_link_quality(std::string_view doc) {
    LinkQuality given;
    bool header_seen = false;
    for (const auto& line : text::lines(doc)) {
        const auto s = text::trim(line.text);
        if (s.front() == '#') continue;
        const auto f = text::split(s, ',');
        if (!header_seen) {
            header_seen = true;
            if (f.size() == 3 && f[0] == "u") continue;
        }
        if (f.size() != 3) throw ParseError("expected u,v,quality", line.number);
        const NodeId u{static_cast<std::uint32_t>(text::parse_int(f[0], line.number))};
        const NodeId v{static_cast<std::uint32_t>(text::parse_int(f[1], line.number))};
        const double q = text::parse_double(f[2], line.number);
        if (!(q > 0.0 && q <= 1.0)) throw ParseError("quality must be in (0,1]", line.number);
        if (u == v) throw ParseError("self link", line.number);
        given[{u, v}] = q;
    }
    LinkQuality out = given;
    for (const auto& [link, q] : given) out.try_emplace({link.second, link.first}, q);
    return out;
}

std::string tree_csv(const CollectionTree& tree) {
    std::string out = "node_id,parent,depth,subtree_size\n";
    for (const auto& [n, p] : tree.parent)
        out += n.str() + ',' + p.str() + ',' + std::to_string(tree.depth.at(n)) + ',' +
               std::to_string(tree.subtree_size.at(n)) + '\n';
    return out;
}

}  // namespace enwsn::topo
