#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mainpath/citation_network.hpp"
#include "mainpath/errors.hpp"
#include "mainpath/layering.hpp"
#include "mainpath/persistence.hpp"

namespace mainpath {

struct Cutoffs {
    double gp_cutoff = 0.3;
    double lp_cutoff = 0.8;
};

// High-persistence patents: gp above the global cutoff or lp above the layer
// cutoff. Scores exactly on a cutoff count as members (1e-9 slack), so a
// patent printed as LP 0.800 under a 0.8 cutoff is not dropped to rounding.
struct HppSet {
    std::set<PatentId> members;
    Cutoffs cutoffs_used;

    bool contains(const PatentId& id) const { return members.count(id) > 0; }
};

inline constexpr double kCutoffSlack = 1e-9;

inline HppSet select_hpps(const PersistenceScores& scores, Cutoffs cutoffs = {}) {
    if (cutoffs.gp_cutoff < 0.0 || cutoffs.gp_cutoff > 1.0 ||
        cutoffs.lp_cutoff < 0.0 || cutoffs.lp_cutoff > 1.0) {
        throw ConfigError("cutoffs must lie in [0,1]");
    }
    HppSet out;
    out.cutoffs_used = cutoffs;
    for (const auto& [id, gp] : scores.gp) {
        if (gp > cutoffs.gp_cutoff - kCutoffSlack ||
            scores.lp.at(id) > cutoffs.lp_cutoff - kCutoffSlack) {
            out.members.insert(id);
        }
    }
    return out;
}

enum class Direction { backward, forward };

inline const char* to_string(Direction d) {
    return d == Direction::backward ? "backward" : "forward";
}

// Which search selected an edge: the seed patent it grew from and the side
// of that seed the search walked.
struct SeedRef {
    PatentId seed;
    Direction direction;

    friend bool operator==(const SeedRef&, const SeedRef&) = default;
    friend auto operator<=>(const SeedRef&, const SeedRef&) = default;
};

struct MainPathNode {
    PatentId id;
    int layer = 1;
    double kp = 0.0;
    double gp = 0.0;
    double lp = 0.0;
    bool hpp = false;
};

struct MainPathEdge {
    CitationEdge edge;
    std::vector<SeedRef> seeds;  // sorted, deduplicated
};

// Annotated subgraph of the source network. Nodes ascend by id, edges by
// (cited, citing); every edge names at least one selecting search.
struct MainPathNetwork {
    std::vector<MainPathNode> nodes;
    std::vector<MainPathEdge> edges;

    std::size_t node_count() const { return nodes.size(); }
    std::size_t edge_count() const { return edges.size(); }

    const MainPathNode* find_node(const PatentId& id) const {
        const auto it = std::lower_bound(
            nodes.begin(), nodes.end(), id,
            [](const MainPathNode& n, const PatentId& key) { return n.id < key; });
        return it != nodes.end() && it->id == id ? &*it : nullptr;
    }

    bool has_edge(const CitationEdge& e) const {
        const auto it = std::lower_bound(
            edges.begin(), edges.end(), e,
            [](const MainPathEdge& m, const CitationEdge& key) {
                return m.edge < key;
            });
        return it != edges.end() && it->edge == e;
    }
};

namespace detail {

// Index-aligned gp / membership tables so the per-seed walks never touch
// string keys.
struct GreedyContext {
    const CitationNetwork& net;
    std::vector<double> gp;
    std::vector<char> hpp;

    GreedyContext(const CitationNetwork& n, const PersistenceScores& scores,
                  const HppSet& hpps)
        : net(n), gp(n.node_count(), 0.0), hpp(n.node_count(), 0) {
        for (NodeIndex v = 0; v < n.node_count(); ++v) {
            const auto it = scores.gp.find(n.id(v));
            if (it == scores.gp.end()) {
                throw LookupError("no score for patent id \"" + n.id(v) + "\"");
            }
            gp[v] = it->second;
            hpp[v] = hpps.contains(n.id(v)) ? 1 : 0;
        }
    }

    // Neighbors of `current` on one side: the argmax-gp subset (ties kept),
    // plus every HPP neighbor when current is itself an HPP.
    void step(NodeIndex current, Direction dir, std::vector<NodeIndex>& out) const {
        out.clear();
        const auto neighbors =
            dir == Direction::backward ? net.cited(current) : net.citing(current);
        if (neighbors.empty()) {
            return;
        }
        double best = -1.0;
        for (const NodeIndex c : neighbors) {
            best = std::max(best, gp[c]);
        }
        for (const NodeIndex c : neighbors) {
            if (gp[c] == best || (hpp[current] && hpp[c])) {
                out.push_back(c);
            }
        }
    }

    // Greedy walk from seed; edges land in `edges` (deduplicated by the
    // set), expansion happens once per node.
    void search(NodeIndex seed, Direction dir,
                std::set<CitationEdge>& edges) const {
        std::vector<char> visited(net.node_count(), 0);
        std::vector<NodeIndex> queue{seed};
        std::vector<NodeIndex> selected;
        visited[seed] = 1;
        for (std::size_t i = 0; i < queue.size(); ++i) {
            const NodeIndex cur = queue[i];
            step(cur, dir, selected);
            for (const NodeIndex nxt : selected) {
                if (dir == Direction::backward) {
                    edges.insert({net.id(nxt), net.id(cur)});
                } else {
                    edges.insert({net.id(cur), net.id(nxt)});
                }
                if (!visited[nxt]) {
                    visited[nxt] = 1;
                    queue.push_back(nxt);
                }
            }
        }
    }
};

// Assembles the annotated network from selected edges (+ forced nodes such
// as isolated HPPs).
inline MainPathNetwork assemble(const LayerAssignment& layers,
                                const PersistenceScores& scores,
                                const HppSet& hpps,
                                std::map<CitationEdge, std::vector<SeedRef>> edges,
                                const std::set<PatentId>& forced_nodes) {
    MainPathNetwork out;
    std::set<PatentId> node_ids = forced_nodes;
    for (auto& [edge, seeds] : edges) {
        node_ids.insert(edge.cited);
        node_ids.insert(edge.citing);
        std::sort(seeds.begin(), seeds.end());
        seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
        out.edges.push_back({edge, std::move(seeds)});
    }
    for (const auto& id : node_ids) {
        out.nodes.push_back({id, layers.at(id), scores.kp.at(id),
                             scores.gp.at(id), scores.lp.at(id),
                             hpps.contains(id)});
    }
    return out;
}

}  // namespace detail

// One step of the greedy selection rule, by id.
inline std::vector<PatentId> step_select(const CitationNetwork& net,
                                         const PersistenceScores& scores,
                                         const HppSet& hpps,
                                         const PatentId& current,
                                         Direction direction) {
    const detail::GreedyContext ctx(net, scores, hpps);
    std::vector<NodeIndex> picked;
    ctx.step(net.require(current), direction, picked);
    std::vector<PatentId> out;
    out.reserve(picked.size());
    for (const NodeIndex v : picked) {
        out.push_back(net.id(v));
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::set<CitationEdge> backward_search(const CitationNetwork& net,
                                              const PersistenceScores& scores,
                                              const HppSet& hpps,
                                              const PatentId& seed) {
    const detail::GreedyContext ctx(net, scores, hpps);
    std::set<CitationEdge> edges;
    ctx.search(net.require(seed), Direction::backward, edges);
    return edges;
}

inline std::set<CitationEdge> forward_search(const CitationNetwork& net,
                                             const PersistenceScores& scores,
                                             const HppSet& hpps,
                                             const PatentId& seed) {
    const detail::GreedyContext ctx(net, scores, hpps);
    std::set<CitationEdge> edges;
    ctx.search(net.require(seed), Direction::forward, edges);
    return edges;
}

// The main-path network: union of a backward and a forward search from every
// HPP. Nodes are all edge endpoints plus every HPP, so an isolated HPP still
// appears. Result is independent of seed iteration order.
inline MainPathNetwork build_main_paths(const CitationNetwork& net,
                                        const LayerAssignment& layers,
                                        const PersistenceScores& scores,
                                        const HppSet& hpps) {
    const detail::GreedyContext ctx(net, scores, hpps);
    std::map<CitationEdge, std::vector<SeedRef>> edges;
    std::set<CitationEdge> found;
    for (const auto& seed : hpps.members) {
        const NodeIndex s = net.require(seed);
        for (const Direction dir : {Direction::backward, Direction::forward}) {
            found.clear();
            ctx.search(s, dir, found);
            for (const auto& e : found) {
                edges[e].push_back({seed, dir});
            }
        }
    }
    return detail::assemble(layers, scores, hpps, std::move(edges),
                            hpps.members);
}

}  // namespace mainpath
