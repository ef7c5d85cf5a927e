#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "synsets/graph.hpp"
#include "synsets/text.hpp"
#include "synsets/vocab.hpp"

namespace synsets {

/// A synonymy graph: words as vertices, dictionary synonymy links as weighted
/// undirected edges. The structure is immutable after loading and safe for
/// concurrent reads.
struct SynonymyGraph {
    Vocabulary vocab;
    Graph graph;

    const std::string& word(Vertex v) const { return vocab.word(v); }

    Vertex require(std::string_view w) const {
        auto id = vocab.find(w);
        if (!id) throw data_error("unknown vertex: " + std::string(w));
        return *id;
    }
};

struct LoadStats {
    std::size_t self_loops_dropped = 0;
    std::size_t duplicate_pairs = 0;
    std::size_t lines_parsed = 0;
};

/// Parses `word1<TAB>word2<TAB>weight` (weight optional, default 1.0).
/// `#`-prefixed lines are comments; duplicate pairs keep the maximum weight;
/// self-loop lines are dropped and counted.
inline SynonymyGraph load_edge_list_text(std::string_view content, const std::string& origin,
                                         LoadStats* stats = nullptr) {
    SynonymyGraph result;
    GraphBuilder builder;
    LoadStats local;
    std::vector<std::string_view> lines = split_lines(content);

    struct Seen {
        Vertex u, v;
    };
    std::size_t content_lines = 0;
    std::vector<Seen> seen;  // for duplicate counting only

    for (std::size_t idx = 0; idx < lines.size(); ++idx) {
        std::string_view line = lines[idx];
        std::string_view trimmed = trim(line);
        if (trimmed.empty() || trimmed.front() == '#') continue;
        ++content_lines;
        std::size_t line_no = idx + 1;

        auto fields = split(line, '\t');
        if (fields.size() < 2 || fields.size() > 3) {
            throw data_error(origin + ":" + std::to_string(line_no) +
                             ": expected 2 or 3 tab-separated fields, got " +
                             std::to_string(fields.size()));
        }
        std::string_view w1 = trim_spaces(fields[0]);
        std::string_view w2 = trim_spaces(fields[1]);
        if (w1.empty() || w2.empty()) {
            throw data_error(origin + ":" + std::to_string(line_no) + ": empty word field");
        }
        double weight = 1.0;
        if (fields.size() == 3) {
            std::string_view ws = trim(fields[2]);
            if (!parse_double(ws, weight)) {
                throw data_error(origin + ":" + std::to_string(line_no) + ": non-numeric weight '" +
                                 std::string(ws) + "'");
            }
            if (!(weight > 0.0)) {
                throw data_error(origin + ":" + std::to_string(line_no) +
                                 ": weight must be positive, got " + std::string(ws));
            }
        }
        if (w1 == w2) {
            ++local.self_loops_dropped;
            continue;
        }
        Vertex u = result.vocab.intern(w1);
        Vertex v = result.vocab.intern(w2);
        seen.push_back({std::min(u, v), std::max(u, v)});
        builder.add_edge(u, v, weight);
        ++local.lines_parsed;
    }

    if (content_lines == 0) throw data_error(origin + ": empty graph (no edge lines)");

    if (result.vocab.size() == 0) {
        // all lines were dropped self-loops: an empty graph, but not an error
        result.graph = Graph();
    } else {
        result.graph = std::move(builder).build();
        std::sort(seen.begin(), seen.end(), [](const Seen& a, const Seen& b) {
            if (a.u != b.u) return a.u < b.u;
            return a.v < b.v;
        });
        for (std::size_t i = 1; i < seen.size(); ++i) {
            if (seen[i].u == seen[i - 1].u && seen[i].v == seen[i - 1].v) ++local.duplicate_pairs;
        }
    }
    if (stats) *stats = local;
    return result;
}

inline SynonymyGraph load_edge_list(const std::filesystem::path& path, LoadStats* stats = nullptr) {
    return load_edge_list_text(read_file(path), path.string(), stats);
}

/// Emits edges sorted by (word1, word2) lexicographically, each edge's
/// endpoints in lexicographic order, weight with up to 6 significant digits.
inline std::string serialize_edge_list(const SynonymyGraph& g) {
    struct Line {
        const std::string* a;
        const std::string* b;
        double w;
    };
    std::vector<Line> rows;
    rows.reserve(g.graph.edge_count());
    g.graph.for_each_edge([&](Vertex u, Vertex v, double w) {
        const std::string& wu = g.word(u);
        const std::string& wv = g.word(v);
        if (wu <= wv) rows.push_back({&wu, &wv, w});
        else rows.push_back({&wv, &wu, w});
    });
    std::sort(rows.begin(), rows.end(), [](const Line& x, const Line& y) {
        if (*x.a != *y.a) return *x.a < *y.a;
        return *x.b < *y.b;
    });
    std::string out;
    for (const Line& r : rows) {
        out += *r.a;
        out += '\t';
        out += *r.b;
        out += '\t';
        out += format_weight(r.w);
        out += '\n';
    }
    return out;
}

inline void save_edge_list(const SynonymyGraph& g, const std::filesystem::path& path) {
    atomic_write(path, serialize_edge_list(g));
}

/// Ego network: the subgraph induced by the ego and its neighbors (order 1),
/// optionally extended by the neighbors' neighbors (order 2).
struct EgoNetwork {
    Vertex ego = 0;        // parent-graph id
    int order = 1;
    std::vector<Vertex> members;  // sorted parent ids; local id = position
    Graph subgraph;
    Vertex local_ego = 0;

    std::size_t local_of(Vertex parent) const {
        auto it = std::lower_bound(members.begin(), members.end(), parent);
        if (it == members.end() || *it != parent)
            throw data_error("vertex " + std::to_string(parent) + " not in ego network");
        return static_cast<std::size_t>(it - members.begin());
    }
};

inline EgoNetwork ego_network(const Graph& g, Vertex ego, int order) {
    if (ego >= g.vertex_count()) throw data_error("unknown vertex id " + std::to_string(ego));
    if (order != 1 && order != 2) throw usage_error("ego network order must be 1 or 2");

    std::vector<Vertex> members;
    members.push_back(ego);
    for (Vertex v : g.neighbors(ego)) members.push_back(v);
    if (order == 2) {
        std::size_t first_order = members.size();
        for (std::size_t i = 0; i < first_order; ++i) {
            for (Vertex v : g.neighbors(members[i])) members.push_back(v);
        }
    }
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());

    EgoNetwork net;
    net.ego = ego;
    net.order = order;
    net.subgraph = induced_subgraph(g, members);
    net.local_ego = static_cast<Vertex>(
        std::lower_bound(members.begin(), members.end(), ego) - members.begin());
    net.members = std::move(members);
    return net;
}

inline EgoNetwork ego_network(const SynonymyGraph& g, std::string_view ego, int order) {
    return ego_network(g.graph, g.require(ego), order);
}

struct GraphStats {
    std::size_t vertices = 0;
    std::size_t edges = 0;
    double weight_sum = 0.0;
    std::map<std::size_t, std::size_t> degree_histogram;
};

inline GraphStats graph_stats(const Graph& g) {
    GraphStats s;
    s.vertices = g.vertex_count();
    s.edges = g.edge_count();
    s.weight_sum = g.total_weight();
    for (Vertex v = 0; v < g.vertex_count(); ++v) ++s.degree_histogram[g.degree(v)];
    return s;
}

}  // namespace synsets
