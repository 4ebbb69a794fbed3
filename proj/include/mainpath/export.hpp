#pragma once

#include <ostream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "mainpath/analysis.hpp"
#include "mainpath/citation_network.hpp"
#include "mainpath/errors.hpp"
#include "mainpath/format.hpp"
#include "mainpath/main_paths.hpp"

namespace mainpath {

enum class ExportFormat { json, dot, graphml, csv };

inline ExportFormat parse_export_format(const std::string& name) {
    if (name == "json") {
        return ExportFormat::json;
    }
    if (name == "dot") {
        return ExportFormat::dot;
    }
    if (name == "graphml") {
        return ExportFormat::graphml;
    }
    if (name == "csv") {
        return ExportFormat::csv;
    }
    throw ConfigError("unknown output format \"" + name +
                      "\" (expected json, dot, graphml, or csv)");
}

// Provenance block every graph export carries.
struct ExportMeta {
    double gp_cutoff = 0.3;
    double lp_cutoff = 0.8;
    std::string scheme = "gbfp";  // or the baseline scheme: "gp" / "spc"
};

inline nlohmann::ordered_json to_json(const ComparisonReport& r) {
    nlohmann::ordered_json cmp;
    cmp["gbfp_nodes"] = r.gbfp_nodes;
    cmp["gbfp_edges"] = r.gbfp_edges;
    cmp["baseline_nodes"] = r.baseline_nodes;
    cmp["baseline_edges"] = r.baseline_edges;
    if (r.complexity_ratio) {
        cmp["complexity_ratio"] = *r.complexity_ratio;
    }
    cmp["hpp_total"] = r.hpp_total;
    cmp["hpp_in_gbfp"] = r.hpp_in_gbfp;
    cmp["hpp_in_baseline"] = r.hpp_in_baseline;
    cmp["hpp_retention_gbfp"] = r.hpp_retention_gbfp;
    cmp["hpp_retention_baseline"] = r.hpp_retention_baseline;
    cmp["missing_hpps_baseline"] = r.missing_hpps_baseline;
    return cmp;
}

inline nlohmann::ordered_json to_json(const MainPathNetwork& net,
                                      const ExportMeta& meta,
                                      const ComparisonReport* comparison = nullptr) {
    nlohmann::ordered_json doc;
    doc["meta"]["gp_cutoff"] = meta.gp_cutoff;
    doc["meta"]["lp_cutoff"] = meta.lp_cutoff;
    doc["meta"]["scheme"] = meta.scheme;
    auto& nodes = doc["nodes"] = nlohmann::ordered_json::array();
    for (const auto& n : net.nodes) {
        nlohmann::ordered_json jn;
        jn["id"] = n.id;
        jn["layer"] = n.layer;
        jn["kp"] = n.kp;
        jn["gp"] = n.gp;
        jn["lp"] = n.lp;
        jn["hpp"] = n.hpp;
        nodes.push_back(std::move(jn));
    }
    auto& edges = doc["edges"] = nlohmann::ordered_json::array();
    for (const auto& e : net.edges) {
        nlohmann::ordered_json je;
        je["cited"] = e.edge.cited;
        je["citing"] = e.edge.citing;
        auto& seeds = je["seeds"] = nlohmann::ordered_json::array();
        for (const auto& s : e.seeds) {
            seeds.push_back({{"seed", s.seed}, {"direction", to_string(s.direction)}});
        }
        edges.push_back(std::move(je));
    }
    if (comparison) {
        doc["comparison"] = to_json(*comparison);
    }
    return doc;
}

// Two-space indent plus trailing newline; ordered keys make the bytes a
// fixed function of the content.
inline void write_json(const nlohmann::ordered_json& doc, std::ostream& os) {
    os << doc.dump(2) << '\n';
}

namespace detail {

inline std::string dot_quote(std::string_view id) {
    std::string out = "\"";
    for (const char c : id) {
        if (c == '"' || c == '\\') {
            out += '\\';
        }
        out += c;
    }
    out += '"';
    return out;
}

inline std::string xml_escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (const char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace detail

inline void write_dot(const MainPathNetwork& net, std::ostream& os) {
    if (net.nodes.empty()) {
        os << "digraph main_paths { }\n";
        return;
    }
    os << "digraph main_paths {\n";
    for (const auto& n : net.nodes) {
        os << "  " << detail::dot_quote(n.id) << " [layer=" << n.layer
           << ", gp=" << format_double(n.gp) << ", lp=" << format_double(n.lp)
           << ", hpp=" << (n.hpp ? "true" : "false") << "];\n";
    }
    for (const auto& e : net.edges) {
        os << "  " << detail::dot_quote(e.edge.cited) << " -> "
           << detail::dot_quote(e.edge.citing) << ";\n";
    }
    os << "}\n";
}

inline void write_graphml(const MainPathNetwork& net, std::ostream& os) {
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
          "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
          "  <key id=\"layer\" for=\"node\" attr.name=\"layer\" attr.type=\"int\"/>\n"
          "  <key id=\"kp\" for=\"node\" attr.name=\"kp\" attr.type=\"double\"/>\n"
          "  <key id=\"gp\" for=\"node\" attr.name=\"gp\" attr.type=\"double\"/>\n"
          "  <key id=\"lp\" for=\"node\" attr.name=\"lp\" attr.type=\"double\"/>\n"
          "  <key id=\"hpp\" for=\"node\" attr.name=\"hpp\" attr.type=\"boolean\"/>\n"
          "  <graph id=\"main_paths\" edgedefault=\"directed\">\n";
    for (const auto& n : net.nodes) {
        os << "    <node id=\"" << detail::xml_escape(n.id) << "\">\n"
           << "      <data key=\"layer\">" << n.layer << "</data>\n"
           << "      <data key=\"kp\">" << format_double(n.kp) << "</data>\n"
           << "      <data key=\"gp\">" << format_double(n.gp) << "</data>\n"
           << "      <data key=\"lp\">" << format_double(n.lp) << "</data>\n"
           << "      <data key=\"hpp\">" << (n.hpp ? "true" : "false")
           << "</data>\n"
           << "    </node>\n";
    }
    for (const auto& e : net.edges) {
        os << "    <edge source=\"" << detail::xml_escape(e.edge.cited)
           << "\" target=\"" << detail::xml_escape(e.edge.citing) << "\"/>\n";
    }
    os << "  </graph>\n</graphml>\n";
}

inline void export_graph(const MainPathNetwork& net, const ExportMeta& meta,
                         ExportFormat format, std::ostream& os,
                         const ComparisonReport* comparison = nullptr) {
    switch (format) {
        case ExportFormat::json:
            write_json(to_json(net, meta, comparison), os);
            return;
        case ExportFormat::dot:
            write_dot(net, os);
            return;
        case ExportFormat::graphml:
            write_graphml(net, os);
            return;
        case ExportFormat::csv:
            throw ConfigError("csv is not a graph export format");
    }
}

inline nlohmann::ordered_json to_json(const ValidationReport& report,
                                      const CitationNetwork& net) {
    nlohmann::ordered_json doc;
    doc["node_count"] = net.node_count();
    doc["edge_count"] = net.edge_count();
    doc["is_dag"] = report.is_dag();
    doc["duplicate_edges"] = report.duplicate_edges;
    auto& dup = doc["duplicate_edge_list"] = nlohmann::ordered_json::array();
    for (const auto& e : report.duplicate_edge_list) {
        dup.push_back({{"cited", e.cited}, {"citing", e.citing}});
    }
    doc["self_loops"] = report.self_loops;
    if (report.cycle) {
        doc["cycle"] = *report.cycle;
    } else {
        doc["cycle"] = nullptr;
    }
    doc["isolated_nodes"] = report.isolated_nodes;
    return doc;
}

}  // namespace mainpath
