#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include "mainpath/layering.hpp"
#include "test_util.hpp"

using namespace mainpath;

TEST_CASE("chain layers count up from the startpoint") {
    const auto net = testutil::from_edges({{"A", "B"}, {"B", "C"}});
    const auto layers = assign_layers(net);
    CHECK(layers.at("A") == 1);
    CHECK(layers.at("B") == 2);
    CHECK(layers.at("C") == 3);
    CHECK(layers.max_layer == 3);
}

TEST_CASE("longest path governs the triangle DAG") {
    const auto net = testutil::from_edges({{"A", "B"}, {"A", "C"}, {"B", "C"}});
    const auto layers = assign_layers(net);
    CHECK(layers.at("A") == 1);
    CHECK(layers.at("B") == 2);
    CHECK(layers.at("C") == 3);  // A→B→C beats the direct A→C hop
}

TEST_CASE("isolated nodes are startpoints at layer 1") {
    const auto net = testutil::from_edges({{"A", "B"}}, {"Lone"});
    const auto layers = assign_layers(net);
    CHECK(layers.at("Lone") == 1);
    CHECK(layers.max_layer == 2);
}

TEST_CASE("empty network has max_layer 0") {
    const auto layers = assign_layers(CitationNetwork{});
    CHECK(layers.max_layer == 0);
    CHECK(layers.layer.empty());
}

TEST_CASE("cycles are rejected with a witness") {
    const auto net = testutil::from_edges({{"A", "B"}, {"B", "A"}});
    try {
        assign_layers(net);
        FAIL("expected a cycle error");
    } catch (const CycleError& e) {
        CHECK(e.cycle() == std::vector<PatentId>{"A", "B"});
    }
}

TEST_CASE("layer assignment matches the path-enumeration oracle") {
    for (unsigned seed = 100; seed < 160; ++seed) {
        const auto net = testutil::random_dag(seed);
        const auto layers = assign_layers(net);
        for (NodeIndex v = 0; v < net.node_count(); ++v) {
            CAPTURE(seed, net.id(v));
            CHECK(layers.at(net.id(v)) == testutil::brute_force_layer(net, v));
        }
    }
}

TEST_CASE("layering invariants hold on random DAGs") {
    for (unsigned seed = 200; seed < 240; ++seed) {
        const auto net = testutil::random_dag(seed);
        const auto layers = assign_layers(net);
        for (NodeIndex v = 0; v < net.node_count(); ++v) {
            const int lv = layers.at(net.id(v));
            if (net.backward_degree(v) == 0) {
                CHECK(lv == 1);
                continue;
            }
            // Every edge climbs, and at least one cited patent is tight.
            bool tight = false;
            for (const NodeIndex u : net.cited(v)) {
                const int lu = layers.at(net.id(u));
                CHECK(lv >= lu + 1);
                tight = tight || lv == lu + 1;
            }
            CHECK(tight);
        }
    }
}

TEST_CASE("adding an edge never lowers a layer; deleting never raises one") {
    for (unsigned seed = 300; seed < 320; ++seed) {
        const auto net = testutil::random_dag(seed);
        if (net.edge_count() == 0) {
            continue;
        }
        const auto base = assign_layers(net);
        const auto edges = edge_list(net);

        // Delete the lexicographically first edge.
        std::vector<std::pair<std::string, std::string>> kept;
        for (std::size_t i = 1; i < edges.size(); ++i) {
            kept.emplace_back(edges[i].cited, edges[i].citing);
        }
        std::vector<std::string> all_nodes;
        for (NodeIndex v = 0; v < net.node_count(); ++v) {
            all_nodes.push_back(net.id(v));
        }
        const auto smaller = testutil::from_edges(kept, all_nodes);
        const auto fewer = assign_layers(smaller);
        for (const auto& [id, layer] : fewer.layer) {
            CHECK(layer <= base.at(id));
        }

        // Add an id-order edge (always acyclic); layers may only grow.
        std::vector<std::pair<std::string, std::string>> grown_edges;
        for (const auto& e : edges) {
            grown_edges.emplace_back(e.cited, e.citing);
        }
        grown_edges.emplace_back(net.id(0),
                                 net.id(static_cast<NodeIndex>(net.node_count() - 1)));
        const auto bigger = assign_layers(testutil::from_edges(grown_edges, all_nodes));
        for (const auto& [id, layer] : base.layer) {
            CHECK(bigger.at(id) >= layer);
        }
    }
}

TEST_CASE("patents_in_layer and CSV export") {
    const auto net = testutil::from_edges({{"A", "B"}, {"A", "C"}});
    const auto layers = assign_layers(net);
    CHECK(patents_in_layer(layers, 2) == std::vector<PatentId>{"B", "C"});
    CHECK(patents_in_layer(layers, 3).empty());

    std::ostringstream os;
    export_layers(layers, os);
    CHECK(os.str() == "patent_id,layer\nA,1\nB,2\nC,2\n");
}

TEST_CASE("unknown ids raise lookup errors") {
    const auto net = testutil::from_edges({{"A", "B"}});
    const auto layers = assign_layers(net);
    CHECK_THROWS_AS(layers.at("Q"), LookupError);
}
