// Command-line front end: ingestion → layering → persistence → HPP selection
// → main-path construction (GBFP or baseline) → comparison, with
// deterministic byte-stable exports.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "mainpath/mainpath.hpp"

namespace {

using namespace mainpath;

CitationNetwork load_network(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open \"" + path + "\"");
    }
    return load_citation_pairs(in);
}

// Exports are composed in memory and written once; a failed write never
// leaves a half-emitted file descriptor state behind.
void emit(const std::string& path, const std::string& bytes) {
    if (path.empty()) {
        std::cout << bytes;
        if (!std::cout) {
            throw IoError("cannot write to standard output");
        }
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open \"" + path + "\" for writing");
    }
    out << bytes;
    out.flush();
    if (!out) {
        throw IoError("cannot write \"" + path + "\"");
    }
}

struct Options {
    std::string citations;
    std::string metadata;
    std::string output;
    std::string format = "json";
    std::string scheme = "gp";
    std::string weights_csv;
    double gp_cutoff = 0.3;
    double lp_cutoff = 0.8;
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    bool serials = false;

    SynthParams synth;

    Cutoffs cutoffs() const {
        if (gp_cutoff < 0.0 || gp_cutoff > 1.0 || lp_cutoff < 0.0 ||
            lp_cutoff > 1.0) {
            throw ConfigError("cutoffs must lie in [0,1]");
        }
        return {gp_cutoff, lp_cutoff};
    }
};

// Everything the graph subcommands share, computed once.
struct Pipeline {
    CitationNetwork net;
    LayerAssignment layers;
    PersistenceScores scores;
    HppSet hpps;
};

Pipeline run_pipeline(const Options& opt) {
    Pipeline p;
    p.net = load_network(opt.citations);
    p.layers = assign_layers(p.net);
    p.scores = compute_all_persistence(p.net, p.layers, opt.workers);
    p.hpps = select_hpps(p.scores, opt.cutoffs());
    return p;
}

void require_format(const Options& opt, std::initializer_list<const char*> allowed) {
    parse_export_format(opt.format);  // rejects unknown names
    for (const char* name : allowed) {
        if (opt.format == name) {
            return;
        }
    }
    std::string list;
    for (const char* name : allowed) {
        if (!list.empty()) {
            list += ", ";
        }
        list += name;
    }
    throw ConfigError("format \"" + opt.format +
                      "\" is not supported here (expected " + list + ")");
}

int run_validate(const Options& opt) {
    auto net = load_network(opt.citations);
    nlohmann::ordered_json doc;
    if (!opt.metadata.empty()) {
        std::ifstream meta_in(opt.metadata, std::ios::binary);
        if (!meta_in) {
            throw IoError("cannot open \"" + opt.metadata + "\"");
        }
        auto merged = load_metadata(net, meta_in);
        doc = to_json(validate(merged.network), merged.network);
        doc["metadata"] = {{"matched_rows", merged.matched_rows},
                           {"unmatched_rows", merged.unmatched_rows},
                           {"bad_dates", merged.bad_dates},
                           {"warnings", merged.warnings}};
    } else {
        doc = to_json(validate(net), net);
    }
    std::ostringstream os;
    write_json(doc, os);
    emit(opt.output, os.str());
    return 0;
}

int run_layers(const Options& opt) {
    const auto net = load_network(opt.citations);
    const auto layers = assign_layers(net);
    std::ostringstream os;
    export_layers(layers, os);
    emit(opt.output, os.str());
    return 0;
}

int run_persistence(const Options& opt) {
    const auto net = load_network(opt.citations);
    const auto layers = assign_layers(net);
    const auto scores = compute_all_persistence(net, layers, opt.workers);
    std::ostringstream os;
    export_scores(scores, layers, os);
    emit(opt.output, os.str());
    return 0;
}

int run_hpps(const Options& opt) {
    const auto cutoffs = opt.cutoffs();  // reject bad cutoffs before loading
    const auto p = run_pipeline(opt);
    std::ostringstream os;
    os << "patent_id,layer,kp,gp,lp,gp_cutoff,lp_cutoff";
    if (opt.serials) {
        os << ",serial";
    }
    os << '\n';
    // Serials rank every patent of the source network by ascending id.
    std::size_t serial = 0;
    std::map<PatentId, std::size_t> serial_of;
    if (opt.serials) {
        for (NodeIndex v = 0; v < p.net.node_count(); ++v) {
            serial_of.emplace(p.net.id(v), ++serial);
        }
    }
    for (const auto& id : p.hpps.members) {
        std::vector<std::string> row = {id,
                                        std::to_string(p.layers.at(id)),
                                        format_double(p.scores.kp.at(id)),
                                        format_fixed(p.scores.gp.at(id), 5),
                                        format_fixed(p.scores.lp.at(id), 5),
                                        format_double(cutoffs.gp_cutoff),
                                        format_double(cutoffs.lp_cutoff)};
        if (opt.serials) {
            row.push_back(std::to_string(serial_of.at(id)));
        }
        csv::write_record(os, row);
    }
    emit(opt.output, os.str());
    return 0;
}

int run_gbfp(const Options& opt) {
    require_format(opt, {"json", "dot", "graphml"});
    const auto p = run_pipeline(opt);
    const auto main_paths = build_main_paths(p.net, p.layers, p.scores, p.hpps);
    const ExportMeta meta{opt.gp_cutoff, opt.lp_cutoff, "gbfp"};
    std::ostringstream os;
    export_graph(main_paths, meta, parse_export_format(opt.format), os);
    emit(opt.output, os.str());
    return 0;
}

int run_baseline(const Options& opt) {
    require_format(opt, {"json", "dot", "graphml"});
    const auto scheme = parse_weight_scheme(opt.scheme);
    const auto p = run_pipeline(opt);

    std::optional<LinkWeights> weights;
    if (scheme == WeightScheme::spc || !opt.weights_csv.empty()) {
        weights = spc_weights(p.net);
    }
    const auto baseline = baseline_forward_paths(
        p.net, p.layers, p.scores, p.hpps, scheme,
        weights ? &*weights : nullptr);
    if (!opt.weights_csv.empty()) {
        std::ostringstream ws;
        export_weights(*weights, ws);
        emit(opt.weights_csv, ws.str());
    }
    const ExportMeta meta{opt.gp_cutoff, opt.lp_cutoff, to_string(scheme)};
    std::ostringstream os;
    export_graph(baseline, meta, parse_export_format(opt.format), os);
    emit(opt.output, os.str());
    return 0;
}

int run_compare(const Options& opt) {
    require_format(opt, {"json", "csv"});
    const auto scheme = parse_weight_scheme(opt.scheme);
    const auto p = run_pipeline(opt);
    const auto main_paths = build_main_paths(p.net, p.layers, p.scores, p.hpps);
    std::optional<LinkWeights> weights;
    if (scheme == WeightScheme::spc) {
        weights = spc_weights(p.net);
    }
    const auto baseline = baseline_forward_paths(
        p.net, p.layers, p.scores, p.hpps, scheme,
        weights ? &*weights : nullptr);
    const auto report = compare_networks(main_paths, baseline, p.hpps);

    std::ostringstream os;
    if (opt.format == "csv") {
        export_comparison_csv(report, os);
    } else {
        const ExportMeta meta{opt.gp_cutoff, opt.lp_cutoff, to_string(scheme)};
        write_json(to_json(main_paths, meta, &report), os);
    }
    emit(opt.output, os.str());
    return 0;
}

int run_generate(const Options& opt) {
    const auto net = generate_synthetic(opt.synth);
    std::ostringstream os;
    export_citations(net, os);
    emit(opt.output, os.str());
    return 0;
}

void add_common(CLI::App* cmd, Options& opt, bool needs_citations = true) {
    cmd->fallthrough();  // lets --config sit after the subcommand too
    auto* citations = cmd->add_option("--citations", opt.citations,
                                      "Citation CSV (citing_id,cited_id)");
    if (needs_citations) {
        citations->required();
    }
    cmd->add_option("--output,-o", opt.output,
                    "Output path (default: standard output)");
    cmd->add_option("--workers", opt.workers,
                    "Worker threads for persistence computation");
}

void add_cutoffs(CLI::App* cmd, Options& opt) {
    cmd->add_option("--gp-cutoff", opt.gp_cutoff, "Global persistence cutoff");
    cmd->add_option("--lp-cutoff", opt.lp_cutoff, "Layer persistence cutoff");
}

}  // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"Patent main-path mining: persistence scores, HPP selection, "
                 "greedy backward/forward main paths, and the forward baseline"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from a config file");
    app.allow_config_extras(false);

    auto* validate_cmd =
        app.add_subcommand("validate", "Check a citation network and report as JSON");
    add_common(validate_cmd, opt);
    validate_cmd->add_option("--metadata", opt.metadata,
                             "Patent metadata CSV to merge and report on");

    auto* layers_cmd =
        app.add_subcommand("layers", "Layer assignment CSV (patent_id,layer)");
    add_common(layers_cmd, opt);

    auto* persistence_cmd = app.add_subcommand(
        "persistence", "Persistence scores CSV (patent_id,layer,kp,gp,lp)");
    add_common(persistence_cmd, opt);

    auto* hpps_cmd =
        app.add_subcommand("hpps", "High-persistence patents as CSV");
    add_common(hpps_cmd, opt);
    add_cutoffs(hpps_cmd, opt);
    hpps_cmd->add_flag("--serials", opt.serials,
                       "Add a serial column (rank by ascending patent id)");

    auto* gbfp_cmd = app.add_subcommand(
        "gbfp", "Main-path network from backward/forward searches at every HPP");
    add_common(gbfp_cmd, opt);
    add_cutoffs(gbfp_cmd, opt);
    gbfp_cmd->add_option("--format", opt.format, "json, dot, or graphml");

    auto* baseline_cmd = app.add_subcommand(
        "baseline", "Forward-search baseline main-path network");
    add_common(baseline_cmd, opt);
    add_cutoffs(baseline_cmd, opt);
    baseline_cmd->add_option("--format", opt.format, "json, dot, or graphml");
    baseline_cmd->add_option("--scheme", opt.scheme,
                             "Edge choice: gp (head-node score) or spc");
    baseline_cmd->add_option("--weights-csv", opt.weights_csv,
                             "Also write SPC link weights to this CSV");

    auto* compare_cmd = app.add_subcommand(
        "compare", "Size and HPP-retention comparison of both methods");
    add_common(compare_cmd, opt);
    add_cutoffs(compare_cmd, opt);
    compare_cmd->add_option("--format", opt.format, "json or csv");
    compare_cmd->add_option("--scheme", opt.scheme,
                            "Baseline edge choice: gp or spc");

    auto* generate_cmd =
        app.add_subcommand("generate", "Synthetic layered citation network CSV");
    add_common(generate_cmd, opt, /*needs_citations=*/false);
    generate_cmd->add_option("--layer-count", opt.synth.layer_count,
                             "Generations of patents");
    generate_cmd->add_option("--per-layer", opt.synth.nodes_per_layer,
                             "Patents per generation");
    generate_cmd->add_option("--mean-citations", opt.synth.mean_backward_citations,
                             "Mean backward citations per patent");
    generate_cmd->add_option("--bias", opt.synth.attachment_bias,
                             "Preferential-attachment strength");
    generate_cmd->add_option("--seed", opt.synth.rng_seed, "RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);  // --help and friends
        }
        std::cerr << "error: usage: " << e.what() << '\n';
        return 2;
    }

    try {
        if (*validate_cmd) {
            return run_validate(opt);
        }
        if (*layers_cmd) {
            return run_layers(opt);
        }
        if (*persistence_cmd) {
            return run_persistence(opt);
        }
        if (*hpps_cmd) {
            return run_hpps(opt);
        }
        if (*gbfp_cmd) {
            return run_gbfp(opt);
        }
        if (*baseline_cmd) {
            return run_baseline(opt);
        }
        if (*compare_cmd) {
            return run_compare(opt);
        }
        if (*generate_cmd) {
            return run_generate(opt);
        }
        std::cerr << "error: usage: no subcommand given\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: config: " << e.what() << '\n';
        return 2;
    } catch (const IoError& e) {
        std::cerr << "error: io: " << e.what() << '\n';
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "error: parse: " << e.what() << '\n';
        return 4;
    } catch (const CycleError& e) {
        std::cerr << "error: cycle: " << e.what() << '\n';
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << '\n';
        return 6;
    }
}
