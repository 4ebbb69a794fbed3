#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "mainpath/citation_network.hpp"
#include "mainpath/csv.hpp"
#include "mainpath/errors.hpp"
#include "mainpath/format.hpp"
#include "mainpath/main_paths.hpp"

namespace mainpath {

struct ComparisonReport {
    std::size_t gbfp_nodes = 0;
    std::size_t gbfp_edges = 0;
    std::size_t baseline_nodes = 0;
    std::size_t baseline_edges = 0;
    // baseline_nodes / gbfp_nodes; absent when gbfp is empty.
    std::optional<double> complexity_ratio;
    std::size_t hpp_total = 0;
    std::size_t hpp_in_gbfp = 0;
    std::size_t hpp_in_baseline = 0;
    double hpp_retention_gbfp = 1.0;
    double hpp_retention_baseline = 1.0;
    std::vector<PatentId> missing_hpps_baseline;  // ascending
};

// Size and HPP-coverage comparison of two main-path networks built from the
// same source network and scores. Retentions default to 1 when there are no
// HPPs to retain.
inline ComparisonReport compare_networks(const MainPathNetwork& gbfp,
                                         const MainPathNetwork& baseline,
                                         const HppSet& hpps) {
    ComparisonReport r;
    r.gbfp_nodes = gbfp.node_count();
    r.gbfp_edges = gbfp.edge_count();
    r.baseline_nodes = baseline.node_count();
    r.baseline_edges = baseline.edge_count();
    if (r.gbfp_nodes > 0) {
        r.complexity_ratio = static_cast<double>(r.baseline_nodes) /
                             static_cast<double>(r.gbfp_nodes);
    }
    r.hpp_total = hpps.members.size();
    for (const auto& id : hpps.members) {
        if (gbfp.find_node(id)) {
            ++r.hpp_in_gbfp;
        }
        if (baseline.find_node(id)) {
            ++r.hpp_in_baseline;
        } else {
            r.missing_hpps_baseline.push_back(id);
        }
    }
    if (r.hpp_total > 0) {
        r.hpp_retention_gbfp =
            static_cast<double>(r.hpp_in_gbfp) / static_cast<double>(r.hpp_total);
        r.hpp_retention_baseline = static_cast<double>(r.hpp_in_baseline) /
                                   static_cast<double>(r.hpp_total);
    }
    return r;
}

// One flat row per report, for parameter sweeps. The optional ratio prints
// empty when absent; the missing-HPP list is ';'-joined inside one cell.
inline void export_comparison_csv(const ComparisonReport& r, std::ostream& os) {
    os << "gbfp_nodes,gbfp_edges,baseline_nodes,baseline_edges,complexity_ratio,"
          "hpp_total,hpp_in_gbfp,hpp_in_baseline,hpp_retention_gbfp,"
          "hpp_retention_baseline,missing_hpps_baseline\n";
    std::string missing;
    for (const auto& id : r.missing_hpps_baseline) {
        if (!missing.empty()) {
            missing += ';';
        }
        missing += id;
    }
    const std::string row[] = {
        std::to_string(r.gbfp_nodes),
        std::to_string(r.gbfp_edges),
        std::to_string(r.baseline_nodes),
        std::to_string(r.baseline_edges),
        r.complexity_ratio ? format_double(*r.complexity_ratio) : std::string(),
        std::to_string(r.hpp_total),
        std::to_string(r.hpp_in_gbfp),
        std::to_string(r.hpp_in_baseline),
        format_double(r.hpp_retention_gbfp),
        format_double(r.hpp_retention_baseline),
        missing};
    csv::write_record(os, row);
}

struct SynthParams {
    int layer_count = 5;
    int nodes_per_layer = 10;
    double mean_backward_citations = 3.0;
    double attachment_bias = 0.0;
    std::uint64_t rng_seed = 0;

    void validate() const {
        if (layer_count < 1) {
            throw ConfigError("layer_count must be >= 1");
        }
        if (nodes_per_layer < 1) {
            throw ConfigError("nodes_per_layer must be >= 1");
        }
        if (!(mean_backward_citations > 0.0) ||
            !std::isfinite(mean_backward_citations)) {
            throw ConfigError("mean_backward_citations must be > 0");
        }
        if (attachment_bias < 0.0 || !std::isfinite(attachment_bias)) {
            throw ConfigError("attachment_bias must be >= 0");
        }
    }
};

namespace detail {

// Fixed random-number contract so seeds reproduce everywhere: mt19937_64,
// uniform doubles from the top 53 bits, Poisson counts by Knuth's product
// method. Draw order per node: one count sequence, then one draw per target.
class SynthRng {
public:
    explicit SynthRng(std::uint64_t seed) : rng_(seed) {}

    double uniform01() {
        return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    }

    // 1 + Poisson(mean - 1): every citing node keeps at least one citation.
    int citation_count(double mean) {
        const double lambda = std::max(0.0, mean - 1.0);
        const double limit = std::exp(-lambda);
        int k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= uniform01();
        } while (p > limit);
        return 1 + (k - 1);
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace detail

// Layered synthetic citation network: generation-g nodes cite only strictly
// earlier generations (acyclic by construction), target choice weighted by
// 1 + attachment_bias × forward citations accumulated so far. Ids are "P" +
// zero-padded serial, width = digits of the node count, so id order equals
// generation order.
inline CitationNetwork generate_synthetic(const SynthParams& params) {
    params.validate();
    const std::size_t total = static_cast<std::size_t>(params.layer_count) *
                              static_cast<std::size_t>(params.nodes_per_layer);
    int width = 1;
    for (std::size_t x = total; x >= 10; x /= 10) {
        ++width;
    }
    const auto name = [&](std::size_t serial) {  // serial is 0-based
        std::string digits = std::to_string(serial + 1);
        return "P" + std::string(width - digits.size(), '0') + digits;
    };

    detail::SynthRng rng(params.rng_seed);
    NetworkBuilder builder;
    std::vector<std::uint32_t> fwd(total, 0);
    std::vector<double> weight;
    for (std::size_t v = 0; v < total; ++v) {
        builder.add_node(name(v));
        const std::size_t eligible = (v / params.nodes_per_layer) *
                                     static_cast<std::size_t>(params.nodes_per_layer);
        if (eligible == 0) {
            continue;  // first generation: startpoints
        }
        std::size_t count = static_cast<std::size_t>(
            rng.citation_count(params.mean_backward_citations));
        count = std::min(count, eligible);

        weight.assign(eligible, 0.0);
        double running = 0.0;
        for (std::size_t t = 0; t < eligible; ++t) {
            weight[t] = 1.0 + params.attachment_bias * fwd[t];
            running += weight[t];
        }
        std::vector<std::size_t> picked;
        picked.reserve(count);
        for (std::size_t pick = 0; pick < count; ++pick) {
            const double r = rng.uniform01() * running;
            double acc = 0.0;
            std::size_t chosen = eligible;
            for (std::size_t t = 0; t < eligible; ++t) {
                acc += weight[t];
                if (weight[t] > 0.0 && r < acc) {
                    chosen = t;
                    break;
                }
            }
            if (chosen == eligible) {  // fp slack: take the last live target
                for (std::size_t t = eligible; t-- > 0;) {
                    if (weight[t] > 0.0) {
                        chosen = t;
                        break;
                    }
                }
            }
            builder.add_edge(name(chosen), name(v));
            running -= weight[chosen];
            weight[chosen] = 0.0;
            picked.push_back(chosen);
        }
        // Forward degrees advance between citing nodes, not between picks.
        for (const std::size_t t : picked) {
            ++fwd[t];
        }
    }
    return builder.build();
}

}  // namespace mainpath
