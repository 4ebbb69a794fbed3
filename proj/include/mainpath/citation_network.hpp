#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mainpath/csv.hpp"
#include "mainpath/errors.hpp"

namespace mainpath {

// Patent identifiers are opaque, case-sensitive strings; no canonicalization
// of patent-number forms is attempted.
using PatentId = std::string;

// Dense node handle, valid only for the network that produced it. Nodes are
// numbered in ascending id order, so index order is lexicographic id order.
using NodeIndex = std::uint32_t;

// A calendar date, either a full ISO day (YYYY-MM-DD) or a bare year.
struct CalendarDate {
    int year = 0;
    int month = 0;  // 0 when only the year is known
    int day = 0;

    static std::optional<CalendarDate> parse(std::string_view text);
    std::string to_string() const;

    friend bool operator==(const CalendarDate&, const CalendarDate&) = default;
};

struct PatentRecord {
    PatentId id;
    std::optional<std::string> patent_number;
    std::optional<CalendarDate> application_date;
    std::optional<std::string> title;
};

// Direction is knowledge flow: from cited (ancestor) to citing (descendant).
struct CitationEdge {
    PatentId cited;
    PatentId citing;

    friend bool operator==(const CitationEdge&, const CitationEdge&) = default;
    friend auto operator<=>(const CitationEdge&, const CitationEdge&) = default;
};

struct ValidationReport {
    std::size_t duplicate_edges = 0;             // rows dropped at load
    std::vector<CitationEdge> duplicate_edge_list;  // distinct duplicated pairs
    std::size_t self_loops = 0;                  // always 0: loaders reject them
    std::vector<PatentId> self_loop_list;
    std::optional<std::vector<PatentId>> cycle;  // absent iff the network is a DAG
    std::size_t isolated_nodes = 0;

    bool is_dag() const { return !cycle.has_value(); }
};

class CitationNetwork;
struct MetadataResult;
MetadataResult load_metadata(const CitationNetwork& net, std::istream& in);

namespace detail {

struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
        return std::hash<std::string_view>{}(s);
    }
};

using IdIndexMap =
    std::unordered_map<std::string, NodeIndex, StringHash, std::equal_to<>>;

}  // namespace detail

// Immutable in-domain patent citation network: deduplicated edges, both
// adjacency directions, nodes addressable by id or by dense index. Safe to
// read from many concurrent workers once constructed.
class CitationNetwork {
public:
    CitationNetwork() = default;

    std::size_t node_count() const { return records_.size(); }
    std::size_t edge_count() const { return edge_count_; }

    const PatentRecord& record(NodeIndex v) const { return records_[v]; }
    const PatentId& id(NodeIndex v) const { return records_[v].id; }
    const std::vector<PatentRecord>& records() const { return records_; }

    std::optional<NodeIndex> find(std::string_view id) const {
        const auto it = index_.find(id);
        if (it == index_.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    NodeIndex require(std::string_view id) const {
        const auto v = find(id);
        if (!v) {
            throw LookupError("unknown patent id \"" + std::string(id) + "\"");
        }
        return *v;
    }

    // Forward adjacency: patents citing v (knowledge flowing out of v).
    std::span<const NodeIndex> citing(NodeIndex v) const { return citing_[v]; }
    // Backward adjacency: patents cited by v.
    std::span<const NodeIndex> cited(NodeIndex v) const { return cited_[v]; }

    std::size_t forward_degree(NodeIndex v) const { return citing_[v].size(); }
    std::size_t backward_degree(NodeIndex v) const { return cited_[v].size(); }

    bool has_edge(NodeIndex cited_v, NodeIndex citing_v) const {
        const auto& out = citing_[cited_v];
        return std::binary_search(out.begin(), out.end(), citing_v);
    }

    std::size_t duplicate_rows_merged() const { return duplicates_merged_; }
    const std::vector<CitationEdge>& duplicated_pairs() const {
        return duplicated_pairs_;
    }

private:
    friend class NetworkBuilder;
    friend MetadataResult load_metadata(const CitationNetwork&, std::istream&);

    std::vector<PatentRecord> records_;            // ascending id order
    std::vector<std::vector<NodeIndex>> citing_;   // sorted ascending
    std::vector<std::vector<NodeIndex>> cited_;    // sorted ascending
    detail::IdIndexMap index_;
    std::size_t edge_count_ = 0;
    std::size_t duplicates_merged_ = 0;
    std::vector<CitationEdge> duplicated_pairs_;
};

// Accumulates nodes and cited→citing pairs, then freezes them into a
// CitationNetwork. Duplicate pairs are merged silently (multiplicity carries
// no meaning for the analysis); self-loops and empty ids are rejected here.
class NetworkBuilder {
public:
    void add_node(std::string_view id) { intern(id); }

    void add_edge(std::string_view cited, std::string_view citing) {
        if (cited == citing) {
            throw ConfigError("self-loop on \"" + std::string(cited) + "\"");
        }
        const auto u = intern(cited);
        const auto v = intern(citing);
        pairs_.emplace_back(u, v);
    }

    CitationNetwork build() const {
        CitationNetwork net;
        // Arrival order → ascending id order.
        std::vector<NodeIndex> order(names_.size());
        for (NodeIndex i = 0; i < order.size(); ++i) {
            order[i] = i;
        }
        std::sort(order.begin(), order.end(), [&](NodeIndex a, NodeIndex b) {
            return names_[a] < names_[b];
        });
        std::vector<NodeIndex> rank(names_.size());
        net.records_.resize(names_.size());
        for (NodeIndex pos = 0; pos < order.size(); ++pos) {
            rank[order[pos]] = pos;
            net.records_[pos].id = names_[order[pos]];
            net.index_.emplace(names_[order[pos]], pos);
        }

        std::vector<std::pair<NodeIndex, NodeIndex>> edges;
        edges.reserve(pairs_.size());
        for (const auto& [u, v] : pairs_) {
            edges.emplace_back(rank[u], rank[v]);
        }
        std::sort(edges.begin(), edges.end());
        const std::size_t total = edges.size();
        // Count dropped rows before unique() discards them.
        for (std::size_t i = 1; i < edges.size(); ++i) {
            if (edges[i] == edges[i - 1]) {
                if (net.duplicated_pairs_.empty() ||
                    net.duplicated_pairs_.back() !=
                        CitationEdge{net.records_[edges[i].first].id,
                                     net.records_[edges[i].second].id}) {
                    net.duplicated_pairs_.push_back(
                        {net.records_[edges[i].first].id,
                         net.records_[edges[i].second].id});
                }
            }
        }
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        net.duplicates_merged_ = total - edges.size();
        net.edge_count_ = edges.size();

        net.citing_.resize(names_.size());
        net.cited_.resize(names_.size());
        for (const auto& [u, v] : edges) {
            net.citing_[u].push_back(v);
            net.cited_[v].push_back(u);
        }
        for (auto& adj : net.cited_) {
            std::sort(adj.begin(), adj.end());
        }
        // citing_ lists are already sorted: edges were sorted by (u, v).
        return net;
    }

private:
    NodeIndex intern(std::string_view id) {
        if (id.empty()) {
            throw ConfigError("empty patent id");
        }
        const auto it = seen_.find(id);
        if (it != seen_.end()) {
            return it->second;
        }
        const auto idx = static_cast<NodeIndex>(names_.size());
        names_.emplace_back(id);
        seen_.emplace(names_.back(), idx);
        return idx;
    }

    std::vector<std::string> names_;  // arrival order
    detail::IdIndexMap seen_;
    std::vector<std::pair<NodeIndex, NodeIndex>> pairs_;
};

inline std::optional<CalendarDate> CalendarDate::parse(std::string_view text) {
    const auto all_digits = [](std::string_view s) {
        return !s.empty() &&
               std::all_of(s.begin(), s.end(),
                           [](unsigned char c) { return c >= '0' && c <= '9'; });
    };
    const auto to_int = [](std::string_view s) {
        int value = 0;
        for (const char c : s) {
            value = value * 10 + (c - '0');
        }
        return value;
    };
    if (text.size() == 4 && all_digits(text)) {
        return CalendarDate{to_int(text), 0, 0};
    }
    if (text.size() == 10 && text[4] == '-' && text[7] == '-') {
        const auto y = text.substr(0, 4);
        const auto m = text.substr(5, 2);
        const auto d = text.substr(8, 2);
        if (!all_digits(y) || !all_digits(m) || !all_digits(d)) {
            return std::nullopt;
        }
        CalendarDate date{to_int(y), to_int(m), to_int(d)};
        if (date.month < 1 || date.month > 12) {
            return std::nullopt;
        }
        static constexpr int kDays[] = {31, 28, 31, 30, 31, 30,
                                        31, 31, 30, 31, 30, 31};
        int days = kDays[date.month - 1];
        const bool leap = date.year % 4 == 0 &&
                          (date.year % 100 != 0 || date.year % 400 == 0);
        if (date.month == 2 && leap) {
            days = 29;
        }
        if (date.day < 1 || date.day > days) {
            return std::nullopt;
        }
        return date;
    }
    return std::nullopt;
}

inline std::string CalendarDate::to_string() const {
    char buf[16];
    if (month == 0) {
        std::snprintf(buf, sizeof buf, "%04d", year);
    } else {
        std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
    }
    return buf;
}

// Loads cited→citing pairs from the citation CSV format:
// header `citing_id,cited_id`, one pair per row. Duplicate pairs are merged
// (the count is recoverable via validate); malformed rows and self-loops
// are errors carrying the data-row number.
inline CitationNetwork load_citation_pairs(std::istream& in) {
    std::vector<std::string> fields;
    if (!csv::read_record(in, fields)) {
        // Header-only emptiness is fine, a zero-byte stream is not a table.
        throw ParseError("missing \"citing_id,cited_id\" header", 0);
    }
    csv::strip_bom(fields.front());
    if (fields.size() != 2 || fields[0] != "citing_id" || fields[1] != "cited_id") {
        throw ParseError("expected header \"citing_id,cited_id\"", 0);
    }
    NetworkBuilder builder;
    std::size_t line = 0;
    while (csv::read_record(in, fields)) {
        ++line;
        if (fields.size() == 1 && fields[0].empty()) {
            continue;  // blank line
        }
        if (fields.size() != 2) {
            throw ParseError("expected 2 columns, got " +
                                 std::to_string(fields.size()),
                             line);
        }
        const auto& citing = fields[0];
        const auto& cited = fields[1];
        if (citing.empty() || cited.empty()) {
            throw ParseError("empty id", line);
        }
        if (citing == cited) {
            throw ParseError("self-loop", line);
        }
        builder.add_edge(cited, citing);
    }
    return builder.build();
}

// Writes the network back out in the citation CSV format, edges ordered by
// (cited, citing). Reloading the output yields an edge-set-identical
// network; isolated nodes have no row to live in and are not round-tripped.
inline void export_citations(const CitationNetwork& net, std::ostream& os) {
    os << "citing_id,cited_id\n";
    for (NodeIndex u = 0; u < net.node_count(); ++u) {
        for (const NodeIndex v : net.citing(u)) {
            const std::string row[] = {net.id(v), net.id(u)};
            csv::write_record(os, row);
        }
    }
}

struct MetadataResult {
    CitationNetwork network;
    std::size_t matched_rows = 0;
    std::size_t unmatched_rows = 0;
    std::size_t bad_dates = 0;
    std::vector<std::string> warnings;
};

// Attaches patent_number/application_date/title to matching records from the
// metadata CSV format (header `patent_id,patent_number,application_date,title`,
// RFC-4180 quoting). Rows for unknown ids and malformed dates are warnings,
// never fatal; an empty stream leaves the network unchanged.
inline MetadataResult load_metadata(const CitationNetwork& net, std::istream& in) {
    MetadataResult result;
    result.network = net;

    std::vector<std::string> fields;
    if (!csv::read_record(in, fields)) {
        return result;
    }
    csv::strip_bom(fields.front());
    const std::vector<std::string> expected = {"patent_id", "patent_number",
                                               "application_date", "title"};
    if (!std::equal(fields.begin(), fields.end(), expected.begin(),
                    expected.end())) {
        throw ParseError(
            "expected header \"patent_id,patent_number,application_date,title\"",
            0);
    }
    std::size_t line = 0;
    while (csv::read_record(in, fields)) {
        ++line;
        if (fields.size() == 1 && fields[0].empty()) {
            continue;
        }
        if (fields.size() != 4) {
            throw ParseError("expected 4 columns, got " +
                                 std::to_string(fields.size()),
                             line);
        }
        const auto& id = fields[0];
        if (id.empty()) {
            throw ParseError("empty id", line);
        }
        const auto v = result.network.find(id);
        if (!v) {
            ++result.unmatched_rows;
            result.warnings.push_back("unknown patent id \"" + id + "\" at line " +
                                      std::to_string(line));
            continue;
        }
        ++result.matched_rows;
        auto& rec = result.network.records_[*v];
        if (!fields[1].empty()) {
            rec.patent_number = fields[1];
        }
        if (!fields[2].empty()) {
            const auto date = CalendarDate::parse(fields[2]);
            if (date) {
                rec.application_date = date;
            } else {
                ++result.bad_dates;
                result.warnings.push_back("invalid application_date \"" +
                                          fields[2] + "\" at line " +
                                          std::to_string(line));
            }
        }
        if (!fields[3].empty()) {
            rec.title = fields[3];
        }
    }
    return result;
}

// Kahn order over cited→citing edges, std::nullopt when a cycle blocks it.
// Ties resolve in ascending index order, so the result is deterministic.
inline std::optional<std::vector<NodeIndex>> topological_order(
    const CitationNetwork& net) {
    const std::size_t n = net.node_count();
    std::vector<std::size_t> pending(n);
    std::vector<NodeIndex> order;
    order.reserve(n);
    std::vector<NodeIndex> frontier;
    for (NodeIndex v = 0; v < n; ++v) {
        pending[v] = net.backward_degree(v);
        if (pending[v] == 0) {
            frontier.push_back(v);
        }
    }
    std::size_t next = 0;
    while (next < frontier.size()) {
        const NodeIndex v = frontier[next++];
        order.push_back(v);
        for (const NodeIndex w : net.citing(v)) {
            if (--pending[w] == 0) {
                frontier.push_back(w);
            }
        }
    }
    if (order.size() != n) {
        return std::nullopt;
    }
    return order;
}

// One witness cycle (empty when the network is a DAG), rotated so the
// smallest id comes first. Detection is deterministic: DFS roots and
// neighbors are taken in ascending index order.
inline std::vector<PatentId> find_cycle(const CitationNetwork& net) {
    const std::size_t n = net.node_count();
    enum class Color : unsigned char { white, grey, black };
    std::vector<Color> color(n, Color::white);
    std::vector<NodeIndex> path;
    // (node, offset of the next out-neighbor to try)
    std::vector<std::pair<NodeIndex, std::size_t>> stack;

    for (NodeIndex root = 0; root < n; ++root) {
        if (color[root] != Color::white) {
            continue;
        }
        stack.emplace_back(root, 0);
        color[root] = Color::grey;
        path.push_back(root);
        while (!stack.empty()) {
            auto& [v, offset] = stack.back();
            const auto out = net.citing(v);
            if (offset < out.size()) {
                const NodeIndex w = out[offset++];
                if (color[w] == Color::grey) {
                    // Back edge: the cycle is the path suffix from w.
                    const auto it = std::find(path.begin(), path.end(), w);
                    std::vector<PatentId> cycle;
                    for (auto p = it; p != path.end(); ++p) {
                        cycle.push_back(net.id(*p));
                    }
                    const auto smallest =
                        std::min_element(cycle.begin(), cycle.end());
                    std::rotate(cycle.begin(), smallest, cycle.end());
                    return cycle;
                }
                if (color[w] == Color::white) {
                    color[w] = Color::grey;
                    path.push_back(w);
                    stack.emplace_back(w, 0);
                }
            } else {
                color[v] = Color::black;
                path.pop_back();
                stack.pop_back();
            }
        }
    }
    return {};
}

inline ValidationReport validate(const CitationNetwork& net) {
    ValidationReport report;
    report.duplicate_edges = net.duplicate_rows_merged();
    report.duplicate_edge_list = net.duplicated_pairs();
    for (NodeIndex v = 0; v < net.node_count(); ++v) {
        if (net.forward_degree(v) == 0 && net.backward_degree(v) == 0) {
            ++report.isolated_nodes;
        }
    }
    if (!topological_order(net)) {
        report.cycle = find_cycle(net);
    }
    return report;
}

// Patents with no in-domain backward citations (layer 1), ascending.
inline std::vector<PatentId> startpoints(const CitationNetwork& net) {
    std::vector<PatentId> out;
    for (NodeIndex v = 0; v < net.node_count(); ++v) {
        if (net.backward_degree(v) == 0) {
            out.push_back(net.id(v));
        }
    }
    return out;
}

// Patents with no in-domain forward citations (sinks of knowledge flow).
inline std::vector<PatentId> endpoints(const CitationNetwork& net) {
    std::vector<PatentId> out;
    for (NodeIndex v = 0; v < net.node_count(); ++v) {
        if (net.forward_degree(v) == 0) {
            out.push_back(net.id(v));
        }
    }
    return out;
}

// All edges, ordered by (cited, citing).
inline std::vector<CitationEdge> edge_list(const CitationNetwork& net) {
    std::vector<CitationEdge> edges;
    edges.reserve(net.edge_count());
    for (NodeIndex u = 0; u < net.node_count(); ++u) {
        for (const NodeIndex v : net.citing(u)) {
            edges.push_back({net.id(u), net.id(v)});
        }
    }
    return edges;
}

}  // namespace mainpath
