// Drives the installed binary end to end: exit codes, stderr diagnostics,
// byte-exact outputs, and determinism across runs and worker counts.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <catch2/catch_amalgamated.hpp>
#include <json.hpp>

#include "mainpath/mainpath.hpp"
#include "test_util.hpp"

namespace {

namespace fs = std::filesystem;

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

fs::path scratch_dir() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() /
                 ("mainpath_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

fs::path scratch_file(const std::string& stem) {
    static int counter = 0;
    return scratch_dir() / (stem + "_" + std::to_string(counter++));
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spit(const fs::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out);
    out << bytes;
}

CliResult run_cli(const std::string& args) {
    const auto out_path = scratch_file("out");
    const auto err_path = scratch_file("err");
    const std::string command = std::string(MAINPATH_CLI_PATH) + " " + args +
                                " > " + out_path.string() + " 2> " +
                                err_path.string();
    const int status = std::system(command.c_str());
    CliResult result;
    REQUIRE(WIFEXITED(status));
    result.exit_code = WEXITSTATUS(status);
    result.out = slurp(out_path);
    result.err = slurp(err_path);
    return result;
}

std::string fixture(const std::string& name) {
    return testutil::data_path("fixtures/" + name);
}

}  // namespace

TEST_CASE("help and usage errors") {
    const auto help = run_cli("--help");
    CHECK(help.exit_code == 0);
    for (const char* name : {"validate", "layers", "persistence", "hpps",
                             "gbfp", "baseline", "compare", "generate"}) {
        CHECK(help.out.find(name) != std::string::npos);
    }

    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("layers").exit_code == 2);  // --citations is required
    const auto unknown = run_cli("layers --citations x --no-such-flag");
    CHECK(unknown.exit_code == 2);
    CHECK(unknown.err.rfind("error: usage: ", 0) == 0);
}

TEST_CASE("failure kinds map to distinct exit codes") {
    const auto missing =
        run_cli("layers --citations " + scratch_file("absent").string());
    CHECK(missing.exit_code == 3);
    CHECK(missing.err.rfind("error: io: ", 0) == 0);

    const auto bad_csv = scratch_file("bad_header");
    spit(bad_csv, "wrong,header\nB,A\n");
    const auto parse = run_cli("layers --citations " + bad_csv.string());
    CHECK(parse.exit_code == 4);
    CHECK(parse.err.rfind("error: parse: ", 0) == 0);

    const auto loop_csv = scratch_file("loop");
    spit(loop_csv, "citing_id,cited_id\nB,A\nA,B\n");
    const auto cycle = run_cli("layers --citations " + loop_csv.string());
    CHECK(cycle.exit_code == 5);
    CHECK(cycle.err.rfind("error: cycle: ", 0) == 0);

    const auto config =
        run_cli("hpps --citations " + fixture("chain.csv") + " --gp-cutoff 1.5");
    CHECK(config.exit_code == 2);
    CHECK(config.err.rfind("error: config: ", 0) == 0);

    CHECK(run_cli("gbfp --citations " + fixture("chain.csv") + " --format csv")
              .exit_code == 2);
    CHECK(run_cli("baseline --citations " + fixture("chain.csv") +
                  " --scheme nonsense")
              .exit_code == 2);
    CHECK(run_cli("baseline --citations " + fixture("chain.csv") +
                  " --format yaml")
              .exit_code == 2);
}

TEST_CASE("layers emits the assignment in id order") {
    const auto r =
        run_cli("layers --citations " + fixture("tiny_lineage.csv"));
    REQUIRE(r.exit_code == 0);
    CHECK(r.out ==
          "patent_id,layer\n"
          "A,1\nE,2\nG,3\nH,3\nJ,4\nK,3\nL,4\nX1,2\nX2,2\nX3,2\n");
}

TEST_CASE("persistence output matches the hand-computed lineage") {
    const auto r =
        run_cli("persistence --citations " + fixture("tiny_lineage.csv"));
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.rfind("patent_id,layer,kp,gp,lp\n"
                      "A,1,3,1.00000,1.00000\n"
                      "E,2,1.9166666666666665,0.63889,1.00000\n",
                      0) == 0);
}

TEST_CASE("--output writes the same bytes as standard output") {
    const auto target = scratch_file("scores_csv");
    const auto to_file =
        run_cli("persistence --citations " + fixture("tiny_lineage.csv") +
                " --output " + target.string());
    REQUIRE(to_file.exit_code == 0);
    CHECK(to_file.out.empty());
    const auto to_stdout =
        run_cli("persistence --citations " + fixture("tiny_lineage.csv"));
    CHECK(slurp(target) == to_stdout.out);
}

TEST_CASE("hpps lists members with cutoffs and optional serials") {
    const auto r = run_cli("hpps --citations " + fixture("tiny_lineage.csv") +
                           " --serials");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out ==
          "patent_id,layer,kp,gp,lp,gp_cutoff,lp_cutoff,serial\n"
          "A,1,3,1.00000,1.00000,0.3,0.8,1\n"
          "E,2,1.9166666666666665,0.63889,1.00000,0.3,0.8,2\n"
          "G,3,1.5,0.50000,1.00000,0.3,0.8,3\n");
}

TEST_CASE("gbfp renders the chain as dot") {
    const auto r = run_cli("gbfp --citations " + fixture("chain.csv") +
                           " --format dot");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out ==
          "digraph main_paths {\n"
          "  \"A\" [layer=1, gp=1, lp=1, hpp=true];\n"
          "  \"B\" [layer=2, gp=1, lp=1, hpp=true];\n"
          "  \"C\" [layer=3, gp=0, lp=0, hpp=false];\n"
          "  \"A\" -> \"B\";\n"
          "  \"B\" -> \"C\";\n"
          "}\n");
}

TEST_CASE("cli json equals the library composition") {
    const auto r = run_cli("gbfp --citations " + fixture("tiny_lineage.csv") +
                           " --format json");
    REQUIRE(r.exit_code == 0);

    const auto net = testutil::load_fixture("fixtures/tiny_lineage.csv");
    const auto layers = mainpath::assign_layers(net);
    const auto scores = mainpath::compute_all_persistence(net, layers);
    const auto hpps = mainpath::select_hpps(scores);
    const auto paths = mainpath::build_main_paths(net, layers, scores, hpps);
    std::ostringstream expected;
    mainpath::write_json(mainpath::to_json(paths, mainpath::ExportMeta{}),
                         expected);
    CHECK(r.out == expected.str());
}

TEST_CASE("baseline writes spc weights on the side") {
    const auto weights_path = scratch_file("weights_csv");
    const auto r = run_cli("baseline --citations " + fixture("chain.csv") +
                           " --scheme spc --format json --weights-csv " +
                           weights_path.string());
    REQUIRE(r.exit_code == 0);
    CHECK(slurp(weights_path) ==
          "citing_id,cited_id,weight\n"
          "B,A,1\n"
          "C,B,1\n");
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["meta"]["scheme"] == "spc");
    CHECK(doc["nodes"].size() == 3);
}

TEST_CASE("compare emits one flat csv row") {
    const auto r = run_cli("compare --citations " + fixture("tiny_lineage.csv") +
                           " --format csv");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out ==
          "gbfp_nodes,gbfp_edges,baseline_nodes,baseline_edges,complexity_ratio,"
          "hpp_total,hpp_in_gbfp,hpp_in_baseline,hpp_retention_gbfp,"
          "hpp_retention_baseline,missing_hpps_baseline\n"
          "5,5,5,4,1,3,3,3,1,1,\n");
}

TEST_CASE("generated networks feed straight back into compare") {
    const auto synth_path = scratch_file("synth_csv");
    const auto gen = run_cli(
        "generate --layer-count 6 --per-layer 8 --mean-citations 3 --seed 11 "
        "--output " +
        synth_path.string());
    REQUIRE(gen.exit_code == 0);
    CHECK(slurp(synth_path).rfind("citing_id,cited_id\n", 0) == 0);

    const auto cmp = run_cli("compare --citations " + synth_path.string() +
                             " --format json");
    REQUIRE(cmp.exit_code == 0);
    const auto doc = nlohmann::json::parse(cmp.out);
    CHECK(doc["comparison"]["hpp_retention_gbfp"] == 1.0);
    CHECK(doc["comparison"]["hpp_total"].get<int>() > 0);
}

TEST_CASE("options load from a config file") {
    const auto synth_a = run_cli("generate --layer-count 3 --per-layer 4 --seed 9");
    REQUIRE(synth_a.exit_code == 0);

    const auto config_path = scratch_file("config_ini");
    spit(config_path,
         "[generate]\n"
         "layer-count=3\n"
         "per-layer=4\n"
         "seed=9\n");
    const auto synth_b =
        run_cli("generate --config " + config_path.string());
    REQUIRE(synth_b.exit_code == 0);
    CHECK(synth_b.out == synth_a.out);
}

TEST_CASE("bytes are stable across repeat runs and worker counts") {
    const std::string base =
        "gbfp --citations " + fixture("tiny_lineage.csv") + " --format json";
    const auto reference = run_cli(base + " --workers 1");
    REQUIRE(reference.exit_code == 0);
    for (const char* workers : {"1", "2", "8"}) {
        for (int repeat = 0; repeat < 2; ++repeat) {
            const auto again = run_cli(base + " --workers " + workers);
            REQUIRE(again.exit_code == 0);
            CHECK(again.out == reference.out);
        }
    }
}
