#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "mainpath/citation_network.hpp"
#include "mainpath/csv.hpp"
#include "mainpath/errors.hpp"
#include "mainpath/format.hpp"
#include "mainpath/layering.hpp"

namespace mainpath {

// Knowledge persistence and its normalizations. gp divides by the domain-wide
// maximum, lp by the per-layer maximum; zero maxima map to 0.
struct PersistenceScores {
    std::map<PatentId, double> kp;
    std::map<PatentId, double> gp;
    std::map<PatentId, double> lp;
    double max_kp_global = 0.0;
    std::map<int, double> max_kp_per_layer;
};

// Every backward path from one sink down to one source, with the retained
// knowledge fraction each path carries.
struct PathEnumeration {
    PatentId source;
    PatentId sink;
    std::vector<std::vector<PatentId>> paths;  // each sink-first, source-last
    std::vector<double> contributions;         // parallel to paths
};

namespace detail {

// Immutable per-network tables shared by every per-source evaluation, plus
// the per-source pass itself. Scratch is externalized so worker threads can
// carry their own.
class PersistenceEngine {
public:
    PersistenceEngine(const CitationNetwork& net, const LayerAssignment& layers)
        : net_(net), layer_of_(net.node_count()), cited_layers_(net.node_count()) {
        const auto order = topological_order(net);
        if (!order) {
            throw CycleError(find_cycle(net));
        }
        topo_pos_.resize(net.node_count());
        for (std::size_t pos = 0; pos < order->size(); ++pos) {
            topo_pos_[(*order)[pos]] = pos;
        }
        for (NodeIndex v = 0; v < net.node_count(); ++v) {
            layer_of_[v] = layers.at(net.id(v));
            auto& cl = cited_layers_[v];
            cl.reserve(net.backward_degree(v));
            for (const NodeIndex u : net.cited(v)) {
                cl.push_back(layers.at(net.id(u)));
            }
            std::sort(cl.begin(), cl.end());
        }
    }

    int layer(NodeIndex v) const { return layer_of_[v]; }

    // |{u : (u → v) and layer(u) >= t}|: citations into layers 1..t-1 are
    // dropped from the denominator.
    std::size_t effective(NodeIndex v, int t) const {
        const auto& cl = cited_layers_[v];
        return cl.end() - std::lower_bound(cl.begin(), cl.end(), t);
    }

    struct Scratch {
        std::vector<double> f;
        std::vector<std::uint32_t> stamp;
        std::uint32_t epoch = 0;
        std::vector<NodeIndex> reach;
    };

    Scratch make_scratch() const {
        return {std::vector<double>(net_.node_count(), 0.0),
                std::vector<std::uint32_t>(net_.node_count(), 0), 0, {}};
    }

    // One evaluation of the per-source forward DP: f(a) = 1; descending the
    // citation flow in topological order, each reachable v receives
    // Σ f(cited ancestors in scope) / effective(v, layer(a)); the result is
    // the sum of f over reachable endpoints. Citations from reachable nodes
    // to out-of-scope ancestors still widen the denominator.
    double source_persistence(NodeIndex a, Scratch& s) const {
        const int t = layer_of_[a];
        ++s.epoch;
        s.reach.clear();
        s.reach.push_back(a);
        s.stamp[a] = s.epoch;
        for (std::size_t i = 0; i < s.reach.size(); ++i) {
            for (const NodeIndex w : net_.citing(s.reach[i])) {
                if (s.stamp[w] != s.epoch) {
                    s.stamp[w] = s.epoch;
                    s.reach.push_back(w);
                }
            }
        }
        std::sort(s.reach.begin(), s.reach.end(),
                  [&](NodeIndex x, NodeIndex y) {
                      return topo_pos_[x] < topo_pos_[y];
                  });
        s.f[a] = 1.0;
        double total = 0.0;
        for (const NodeIndex v : s.reach) {
            if (v != a) {
                double sum = 0.0;
                for (const NodeIndex u : net_.cited(v)) {
                    if (s.stamp[u] == s.epoch) {
                        sum += s.f[u];
                    }
                }
                s.f[v] = sum / static_cast<double>(effective(v, t));
            }
            if (v != a && net_.forward_degree(v) == 0) {
                total += s.f[v];
            }
        }
        return total;
    }

private:
    const CitationNetwork& net_;
    std::vector<int> layer_of_;
    std::vector<std::size_t> topo_pos_;
    std::vector<std::vector<int>> cited_layers_;
};

}  // namespace detail

inline std::size_t effective_backward_count(const CitationNetwork& net,
                                            const LayerAssignment& layers,
                                            const PatentId& v, int t) {
    const NodeIndex idx = net.require(v);
    std::size_t count = 0;
    for (const NodeIndex u : net.cited(idx)) {
        if (layers.at(net.id(u)) >= t) {
            ++count;
        }
    }
    return count;
}

inline double knowledge_persistence(const CitationNetwork& net,
                                    const LayerAssignment& layers,
                                    const PatentId& a) {
    const detail::PersistenceEngine engine(net, layers);
    auto scratch = engine.make_scratch();
    return engine.source_persistence(net.require(a), scratch);
}

// Recomputes maxima and the gp/lp columns from kp. Idempotent.
inline PersistenceScores normalize(PersistenceScores scores,
                                   const LayerAssignment& layers) {
    scores.max_kp_global = 0.0;
    scores.max_kp_per_layer.clear();
    for (const auto& [id, kp] : scores.kp) {
        scores.max_kp_global = std::max(scores.max_kp_global, kp);
        auto& layer_max = scores.max_kp_per_layer[layers.at(id)];
        layer_max = std::max(layer_max, kp);
    }
    scores.gp.clear();
    scores.lp.clear();
    for (const auto& [id, kp] : scores.kp) {
        scores.gp[id] = scores.max_kp_global > 0.0 ? kp / scores.max_kp_global : 0.0;
        const double layer_max = scores.max_kp_per_layer.at(layers.at(id));
        scores.lp[id] = layer_max > 0.0 ? kp / layer_max : 0.0;
    }
    return scores;
}

// Evaluates every source. Each worker owns its scratch and strides over the
// node range, so the per-source arithmetic — and therefore the output — is
// bit-identical for any worker count.
inline PersistenceScores compute_all_persistence(const CitationNetwork& net,
                                                 const LayerAssignment& layers,
                                                 std::size_t workers = 1) {
    const detail::PersistenceEngine engine(net, layers);
    const std::size_t n = net.node_count();
    std::vector<double> kp_by_index(n, 0.0);
    workers = std::max<std::size_t>(1, std::min(workers, n == 0 ? 1 : n));

    const auto run = [&](std::size_t first) {
        auto scratch = engine.make_scratch();
        for (std::size_t v = first; v < n; v += workers) {
            kp_by_index[v] =
                engine.source_persistence(static_cast<NodeIndex>(v), scratch);
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back(run, w);
        }
        for (auto& t : pool) {
            t.join();
        }
    }

    PersistenceScores scores;
    for (NodeIndex v = 0; v < n; ++v) {
        scores.kp.emplace(net.id(v), kp_by_index[v]);
    }
    return normalize(std::move(scores), layers);
}

// Literal path enumeration: every backward path from every reachable endpoint
// down to `a`, grouped per sink (ascending sink id, discovery order within).
// The returned total agrees with knowledge_persistence to 1e-9 relative
// tolerance; exceeding max_paths raises OracleLimitError, never truncates.
inline std::pair<double, std::vector<PathEnumeration>> brute_force_persistence(
    const CitationNetwork& net, const LayerAssignment& layers, const PatentId& a,
    std::size_t max_paths = 1'000'000) {
    const detail::PersistenceEngine engine(net, layers);
    const NodeIndex src = net.require(a);
    const int t = engine.layer(src);

    std::map<PatentId, PathEnumeration> by_sink;
    std::size_t found = 0;
    std::vector<NodeIndex> path{src};

    // Depth-first over citing edges; contribution accumulates one
    // 1/effective factor per patent after the source.
    const auto descend = [&](auto&& self, NodeIndex v, double contribution) -> void {
        if (v != src && net.forward_degree(v) == 0) {
            if (++found > max_paths) {
                throw OracleLimitError("oracle too large: more than " +
                                       std::to_string(max_paths) +
                                       " backward paths from \"" + a + "\"");
            }
            auto& bucket = by_sink[net.id(v)];
            bucket.source = a;
            bucket.sink = net.id(v);
            std::vector<PatentId> ids(path.size());
            std::transform(path.rbegin(), path.rend(), ids.begin(),
                           [&](NodeIndex u) { return net.id(u); });
            bucket.paths.push_back(std::move(ids));
            bucket.contributions.push_back(contribution);
            return;
        }
        for (const NodeIndex w : net.citing(v)) {
            path.push_back(w);
            self(self, w,
                 contribution / static_cast<double>(engine.effective(w, t)));
            path.pop_back();
        }
    };
    descend(descend, src, 1.0);

    double total = 0.0;
    std::vector<PathEnumeration> sinks;
    sinks.reserve(by_sink.size());
    for (auto& [id, bucket] : by_sink) {
        for (const double c : bucket.contributions) {
            total += c;
        }
        sinks.push_back(std::move(bucket));
    }
    return {total, std::move(sinks)};
}

// CSV `patent_id,layer,kp,gp,lp`: kp round-trips exactly, gp/lp print at
// five decimals (matching the precision the reference tables use).
inline void export_scores(const PersistenceScores& scores,
                          const LayerAssignment& layers, std::ostream& os) {
    os << "patent_id,layer,kp,gp,lp\n";
    for (const auto& [id, kp] : scores.kp) {
        const std::string row[] = {id, std::to_string(layers.at(id)),
                                   format_double(kp),
                                   format_fixed(scores.gp.at(id), 5),
                                   format_fixed(scores.lp.at(id), 5)};
        csv::write_record(os, row);
    }
}

}  // namespace mainpath
