#include <sstream>
#include <string>

#include <catch2/catch_amalgamated.hpp>

#include "mainpath/export.hpp"
#include "mainpath/layering.hpp"
#include "mainpath/persistence.hpp"
#include "test_util.hpp"

using namespace mainpath;

namespace {

// Three-patent chain where B is the only high-persistence patent.
MainPathNetwork chain_paths() {
    const auto net = testutil::from_edges({{"A", "B"}, {"B", "C"}});
    const auto layers = assign_layers(net);
    const auto scores = compute_all_persistence(net, layers);
    HppSet hpps;
    hpps.members.insert("B");
    return build_main_paths(net, layers, scores, hpps);
}

}  // namespace

TEST_CASE("format names parse") {
    CHECK(parse_export_format("json") == ExportFormat::json);
    CHECK(parse_export_format("dot") == ExportFormat::dot);
    CHECK(parse_export_format("graphml") == ExportFormat::graphml);
    CHECK(parse_export_format("csv") == ExportFormat::csv);
    CHECK_THROWS_AS(parse_export_format("yaml"), ConfigError);
    CHECK_THROWS_AS(parse_export_format("DOT"), ConfigError);
}

TEST_CASE("empty network has a canonical dot form") {
    std::ostringstream os;
    write_dot(MainPathNetwork{}, os);
    CHECK(os.str() == "digraph main_paths { }\n");
}

TEST_CASE("dot output for a chain, byte for byte") {
    std::ostringstream os;
    write_dot(chain_paths(), os);
    CHECK(os.str() ==
          "digraph main_paths {\n"
          "  \"A\" [layer=1, gp=1, lp=1, hpp=false];\n"
          "  \"B\" [layer=2, gp=1, lp=1, hpp=true];\n"
          "  \"C\" [layer=3, gp=0, lp=0, hpp=false];\n"
          "  \"A\" -> \"B\";\n"
          "  \"B\" -> \"C\";\n"
          "}\n");
}

TEST_CASE("dot escapes quotes and backslashes in ids") {
    MainPathNetwork net;
    net.nodes.push_back({"he\"llo\\", 1, 0.0, 0.0, 0.0, false});
    std::ostringstream os;
    write_dot(net, os);
    CHECK(os.str().find("\"he\\\"llo\\\\\"") != std::string::npos);
}

TEST_CASE("json document carries the full schema") {
    const auto paths = chain_paths();
    const auto doc = to_json(paths, ExportMeta{});

    CHECK(doc["meta"]["gp_cutoff"] == 0.3);
    CHECK(doc["meta"]["lp_cutoff"] == 0.8);
    CHECK(doc["meta"]["scheme"] == "gbfp");

    REQUIRE(doc["nodes"].size() == 3);
    const auto& b = doc["nodes"][1];
    CHECK(b["id"] == "B");
    CHECK(b["layer"] == 2);
    CHECK(b["kp"] == 1.0);
    CHECK(b["gp"] == 1.0);
    CHECK(b["lp"] == 1.0);
    CHECK(b["hpp"] == true);
    CHECK(doc["nodes"][2]["hpp"] == false);

    REQUIRE(doc["edges"].size() == 2);
    const auto& ab = doc["edges"][0];
    CHECK(ab["cited"] == "A");
    CHECK(ab["citing"] == "B");
    REQUIRE(ab["seeds"].size() == 1);
    CHECK(ab["seeds"][0]["seed"] == "B");
    CHECK(ab["seeds"][0]["direction"] == "backward");
    CHECK(doc["edges"][1]["seeds"][0]["direction"] == "forward");

    CHECK_FALSE(doc.contains("comparison"));

    // Key order is part of the contract.
    const std::string dumped = doc.dump();
    CHECK(dumped.find("\"meta\"") < dumped.find("\"nodes\""));
    CHECK(dumped.find("\"nodes\"") < dumped.find("\"edges\""));
    const auto node_pos = dumped.find("\"id\"");
    CHECK(node_pos < dumped.find("\"layer\""));
    CHECK(dumped.find("\"layer\"") < dumped.find("\"kp\""));
}

TEST_CASE("json bytes survive a parse round trip") {
    std::ostringstream first;
    write_json(to_json(chain_paths(), ExportMeta{}), first);
    const auto reparsed = nlohmann::ordered_json::parse(first.str());
    std::ostringstream second;
    write_json(reparsed, second);
    CHECK(first.str() == second.str());
    CHECK(first.str().back() == '\n');
}

TEST_CASE("comparison block rides along when present") {
    ComparisonReport r;
    r.gbfp_nodes = 3;
    r.gbfp_edges = 2;
    r.baseline_nodes = 3;
    r.baseline_edges = 2;
    r.complexity_ratio = 1.0;
    r.hpp_total = 1;
    r.hpp_in_gbfp = 1;
    r.hpp_in_baseline = 1;
    const auto doc = to_json(chain_paths(), ExportMeta{}, &r);
    REQUIRE(doc.contains("comparison"));
    CHECK(doc["comparison"]["complexity_ratio"] == 1.0);
    CHECK(doc["comparison"]["missing_hpps_baseline"].is_array());

    r.complexity_ratio.reset();
    CHECK_FALSE(to_json(r).contains("complexity_ratio"));
}

TEST_CASE("graphml carries typed attributes") {
    std::ostringstream os;
    write_graphml(chain_paths(), os);
    const auto text = os.str();
    CHECK(text.find("<graphml xmlns=") != std::string::npos);
    CHECK(text.find("attr.name=\"hpp\" attr.type=\"boolean\"") !=
          std::string::npos);
    CHECK(text.find("<node id=\"A\">") != std::string::npos);
    CHECK(text.find("<data key=\"layer\">2</data>") != std::string::npos);
    CHECK(text.find("<data key=\"hpp\">true</data>") != std::string::npos);
    CHECK(text.find("<edge source=\"A\" target=\"B\"/>") != std::string::npos);
    CHECK(text.find("<edge source=\"B\" target=\"C\"/>") != std::string::npos);
}

TEST_CASE("graphml escapes xml metacharacters") {
    MainPathNetwork net;
    net.nodes.push_back({"a<b>&\"'", 1, 0.0, 0.0, 0.0, false});
    std::ostringstream os;
    write_graphml(net, os);
    CHECK(os.str().find("a&lt;b&gt;&amp;&quot;&apos;") != std::string::npos);
}

TEST_CASE("graph export dispatch") {
    std::ostringstream os;
    export_graph(MainPathNetwork{}, ExportMeta{}, ExportFormat::dot, os);
    CHECK(os.str() == "digraph main_paths { }\n");
    CHECK_THROWS_AS(
        export_graph(MainPathNetwork{}, ExportMeta{}, ExportFormat::csv, os),
        ConfigError);
}

TEST_CASE("validation report serializes with explicit nulls") {
    SECTION("clean dag") {
        std::istringstream in(
            "citing_id,cited_id\nB,A\nB,A\nC,B\n");
        const auto net = load_citation_pairs(in);
        const auto doc = to_json(validate(net), net);
        CHECK(doc["node_count"] == 3);
        CHECK(doc["edge_count"] == 2);
        CHECK(doc["is_dag"] == true);
        CHECK(doc["duplicate_edges"] == 1);
        REQUIRE(doc["duplicate_edge_list"].size() == 1);
        CHECK(doc["duplicate_edge_list"][0]["cited"] == "A");
        CHECK(doc["duplicate_edge_list"][0]["citing"] == "B");
        CHECK(doc["self_loops"] == 0);
        CHECK(doc["cycle"].is_null());
        CHECK(doc["isolated_nodes"] == 0);
    }
    SECTION("cycle witness") {
        NetworkBuilder builder;
        builder.add_edge("A", "B");
        builder.add_edge("B", "A");
        const auto net = builder.build();
        const auto doc = to_json(validate(net), net);
        CHECK(doc["is_dag"] == false);
        CHECK(doc["cycle"] == nlohmann::ordered_json::array({"A", "B"}));
    }
}
