#pragma once

#include <algorithm>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "mainpath/citation_network.hpp"
#include "mainpath/csv.hpp"
#include "mainpath/errors.hpp"

namespace mainpath {

// Layer = 1 + length of the longest backward citation chain. Startpoints sit
// at layer 1; every edge (u → v) has layer(v) >= layer(u) + 1, tight for at
// least one cited u.
struct LayerAssignment {
    std::map<PatentId, int> layer;
    int max_layer = 0;  // 0 only for the empty network

    int at(const PatentId& id) const {
        const auto it = layer.find(id);
        if (it == layer.end()) {
            throw LookupError("unknown patent id \"" + id + "\"");
        }
        return it->second;
    }
};

// Longest-path DP over a topological order. Throws CycleError with a witness
// when the network is not a DAG. Isolated nodes land in layer 1.
inline LayerAssignment assign_layers(const CitationNetwork& net) {
    const auto order = topological_order(net);
    if (!order) {
        throw CycleError(find_cycle(net));
    }
    std::vector<int> depth(net.node_count(), 1);
    LayerAssignment out;
    for (const NodeIndex v : *order) {
        for (const NodeIndex u : net.cited(v)) {
            depth[v] = std::max(depth[v], depth[u] + 1);
        }
    }
    for (NodeIndex v = 0; v < net.node_count(); ++v) {
        out.layer.emplace(net.id(v), depth[v]);
        out.max_layer = std::max(out.max_layer, depth[v]);
    }
    return out;
}

// Members of one layer, ascending by id.
inline std::vector<PatentId> patents_in_layer(const LayerAssignment& layers,
                                              int t) {
    std::vector<PatentId> out;
    for (const auto& [id, layer] : layers.layer) {
        if (layer == t) {
            out.push_back(id);
        }
    }
    return out;
}

// CSV `patent_id,layer`, rows ascending by id.
inline void export_layers(const LayerAssignment& layers, std::ostream& os) {
    os << "patent_id,layer\n";
    for (const auto& [id, layer] : layers.layer) {
        const std::string row[] = {id, std::to_string(layer)};
        csv::write_record(os, row);
    }
}

}  // namespace mainpath
