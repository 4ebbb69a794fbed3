#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mainpath/citation_network.hpp"
#include "mainpath/csv.hpp"
#include "mainpath/errors.hpp"
#include "mainpath/layering.hpp"
#include "mainpath/main_paths.hpp"
#include "mainpath/persistence.hpp"

namespace mainpath {

// Path counts grow combinatorially with network depth, so weights are exact
// arbitrary-precision integers; a fixed-width counter would silently wrap.
using PathCount = boost::multiprecision::cpp_int;

enum class WeightScheme { gp, spc };

inline const char* to_string(WeightScheme s) {
    return s == WeightScheme::gp ? "gp" : "spc";
}

inline WeightScheme parse_weight_scheme(const std::string& name) {
    if (name == "gp") {
        return WeightScheme::gp;
    }
    if (name == "spc") {
        return WeightScheme::spc;
    }
    throw ConfigError("unknown weight scheme \"" + name + "\" (expected gp or spc)");
}

struct LinkWeights {
    std::map<CitationEdge, PathCount> weight;
    WeightScheme scheme = WeightScheme::spc;
    // Source-to-sink paths with at least one edge; equals the weight flowing
    // out of all startpoints and into all endpoints.
    PathCount total_paths = 0;
};

// Search-path-count weights: weight(u→v) = (paths from any startpoint to u)
// × (paths from v to any endpoint), both counting the node-only path as 1.
inline LinkWeights spc_weights(const CitationNetwork& net) {
    const auto order = topological_order(net);
    if (!order) {
        throw CycleError(find_cycle(net));
    }
    const std::size_t n = net.node_count();
    std::vector<PathCount> from_start(n, 0), to_end(n, 0);
    for (const NodeIndex v : *order) {
        if (net.backward_degree(v) == 0) {
            from_start[v] = 1;
        } else {
            for (const NodeIndex u : net.cited(v)) {
                from_start[v] += from_start[u];
            }
        }
    }
    for (auto it = order->rbegin(); it != order->rend(); ++it) {
        const NodeIndex v = *it;
        if (net.forward_degree(v) == 0) {
            to_end[v] = 1;
        } else {
            for (const NodeIndex w : net.citing(v)) {
                to_end[v] += to_end[w];
            }
        }
    }
    LinkWeights out;
    out.scheme = WeightScheme::spc;
    for (NodeIndex u = 0; u < n; ++u) {
        for (const NodeIndex v : net.citing(u)) {
            out.weight.emplace(CitationEdge{net.id(u), net.id(v)},
                               from_start[u] * to_end[v]);
        }
    }
    for (NodeIndex v = 0; v < n; ++v) {
        if (net.backward_degree(v) == 0) {
            for (const NodeIndex w : net.citing(v)) {
                out.total_paths += to_end[w];
            }
        }
    }
    return out;
}

// The prior approach: forward greedy walks from every startpoint, following
// the outgoing edges of maximal value — head-node gp under the gp scheme,
// edge SPC weight under the spc scheme — ties kept, until endpoints. Node
// annotations (including hpp flags) use the same scores/hpps as the main
// method so the two networks are directly comparable.
inline MainPathNetwork baseline_forward_paths(
    const CitationNetwork& net, const LayerAssignment& layers,
    const PersistenceScores& scores, const HppSet& hpps,
    WeightScheme scheme = WeightScheme::gp,
    const LinkWeights* weights = nullptr) {
    if (scheme == WeightScheme::spc && weights == nullptr) {
        throw ConfigError("spc scheme requires link weights");
    }
    const detail::GreedyContext ctx(net, scores, hpps);

    // Index-aligned edge weights for the spc scheme, matching citing(u) order.
    std::vector<std::vector<const PathCount*>> edge_weight;
    if (scheme == WeightScheme::spc) {
        edge_weight.resize(net.node_count());
        for (NodeIndex u = 0; u < net.node_count(); ++u) {
            for (const NodeIndex v : net.citing(u)) {
                const auto it = weights->weight.find({net.id(u), net.id(v)});
                if (it == weights->weight.end()) {
                    throw LookupError("no weight for edge " + net.id(u) + " -> " +
                                      net.id(v));
                }
                edge_weight[u].push_back(&it->second);
            }
        }
    }

    const auto pick = [&](NodeIndex cur, std::vector<NodeIndex>& out) {
        out.clear();
        const auto heads = net.citing(cur);
        if (heads.empty()) {
            return;
        }
        if (scheme == WeightScheme::gp) {
            double best = -1.0;
            for (const NodeIndex h : heads) {
                best = std::max(best, ctx.gp[h]);
            }
            for (const NodeIndex h : heads) {
                if (ctx.gp[h] == best) {
                    out.push_back(h);
                }
            }
        } else {
            const PathCount* best = nullptr;
            for (const auto* w : edge_weight[cur]) {
                if (best == nullptr || *w > *best) {
                    best = w;
                }
            }
            for (std::size_t i = 0; i < heads.size(); ++i) {
                if (*edge_weight[cur][i] == *best) {
                    out.push_back(heads[i]);
                }
            }
        }
    };

    std::map<CitationEdge, std::vector<SeedRef>> edges;
    std::set<PatentId> forced;
    std::vector<char> visited;
    std::vector<NodeIndex> queue, picked;
    for (NodeIndex s = 0; s < net.node_count(); ++s) {
        if (net.backward_degree(s) != 0) {
            continue;
        }
        forced.insert(net.id(s));
        visited.assign(net.node_count(), 0);
        queue.clear();
        queue.push_back(s);
        visited[s] = 1;
        for (std::size_t i = 0; i < queue.size(); ++i) {
            const NodeIndex cur = queue[i];
            pick(cur, picked);
            for (const NodeIndex nxt : picked) {
                edges[{net.id(cur), net.id(nxt)}].push_back(
                    {net.id(s), Direction::forward});
                if (!visited[nxt]) {
                    visited[nxt] = 1;
                    queue.push_back(nxt);
                }
            }
        }
    }
    return detail::assemble(layers, scores, hpps, std::move(edges), forced);
}

// One weakly-connected piece of a main-path network.
struct ComponentInfo {
    std::vector<PatentId> members;  // ascending
    std::size_t node_count = 0;
    std::size_t edge_count = 0;
    std::size_t hpp_count = 0;
};

// Components sorted by node_count descending, then hpp_count descending,
// then smallest member id — the biggest piece is not always the one holding
// the most high-persistence patents, so both counts are surfaced.
inline std::vector<ComponentInfo> rank_components(const MainPathNetwork& net,
                                                  const HppSet& hpps) {
    std::map<PatentId, std::size_t> index;
    for (const auto& node : net.nodes) {
        index.emplace(node.id, index.size());
    }
    std::vector<std::size_t> parent(index.size());
    for (std::size_t i = 0; i < parent.size(); ++i) {
        parent[i] = i;
    }
    const auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (const auto& e : net.edges) {
        parent[find(index.at(e.edge.cited))] = find(index.at(e.edge.citing));
    }
    std::map<std::size_t, ComponentInfo> groups;
    for (const auto& node : net.nodes) {
        auto& g = groups[find(index.at(node.id))];
        g.members.push_back(node.id);
        ++g.node_count;
        if (hpps.contains(node.id)) {
            ++g.hpp_count;
        }
    }
    for (const auto& e : net.edges) {
        ++groups[find(index.at(e.edge.cited))].edge_count;
    }
    std::vector<ComponentInfo> out;
    out.reserve(groups.size());
    for (auto& [root, g] : groups) {
        out.push_back(std::move(g));  // members already ascend: nodes do
    }
    std::sort(out.begin(), out.end(),
              [](const ComponentInfo& a, const ComponentInfo& b) {
                  if (a.node_count != b.node_count) {
                      return a.node_count > b.node_count;
                  }
                  if (a.hpp_count != b.hpp_count) {
                      return a.hpp_count > b.hpp_count;
                  }
                  return a.members.front() < b.members.front();
              });
    return out;
}

// CSV `citing_id,cited_id,weight`, rows ordered by (cited, citing).
inline void export_weights(const LinkWeights& weights, std::ostream& os) {
    os << "citing_id,cited_id,weight\n";
    for (const auto& [edge, w] : weights.weight) {
        const std::string row[] = {edge.citing, edge.cited, w.str()};
        csv::write_record(os, row);
    }
}

}  // namespace mainpath
