#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "synsets/graph.hpp"
#include "synsets/synonymy.hpp"

namespace synsets {

/// Parameters of the transitivity expansion: insert an edge between two
/// disconnected words when at least `min_paths` simple paths of length in
/// [min_len, max_len] connect them while avoiding the shared ego.
struct ExpansionParams {
    int min_paths = 1;  // k
    int min_len = 2;    // i
    int max_len = 2;    // j
    double inserted_weight = 1.0;

    void validate() const {
        if (min_len < 2) throw usage_error("expansion: min path length must be >= 2");
        if (max_len < min_len) throw usage_error("expansion: max path length must be >= min length");
        if (min_paths < 1) throw usage_error("expansion: min paths must be >= 1");
        if (!(inserted_weight > 0.0)) throw usage_error("expansion: inserted weight must be positive");
    }
};

struct ExpansionReport {
    std::size_t edges_added = 0;
    std::size_t candidates_considered = 0;
    std::map<std::string, std::size_t> added_by_ego;
};

/// All unordered pairs of distinct vertices of the ego's order-1 network that
/// are not edges of that network. Since the ego is adjacent to every other
/// member, every candidate pair consists of two neighbors of the ego.
inline std::vector<std::pair<Vertex, Vertex>> candidate_edges(const Graph& g, Vertex ego) {
    if (ego >= g.vertex_count()) throw data_error("unknown vertex id " + std::to_string(ego));
    auto nbrs = g.neighbors(ego);
    std::vector<std::pair<Vertex, Vertex>> out;
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
        for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
            if (!g.has_edge(nbrs[i], nbrs[j])) out.emplace_back(nbrs[i], nbrs[j]);
        }
    }
    return out;
}

/// Number of simple v->w paths inside the order-2 ego network that avoid the
/// ego entirely and have edge count in [min_len, max_len], counted with early
/// exit: the result saturates at min_paths.
inline int count_paths_bounded(const EgoNetwork& n2, Vertex v, Vertex w, const ExpansionParams& params) {
    params.validate();
    if (v == w) throw usage_error("count_paths_bounded: endpoints must differ");
    const Graph& g = n2.subgraph;
    Vertex lv = static_cast<Vertex>(n2.local_of(v));
    Vertex lw = static_cast<Vertex>(n2.local_of(w));
    Vertex lego = n2.local_ego;
    const int k = params.min_paths;

    if (params.min_len == 2 && params.max_len == 2) {
        // a length-2 simple path is exactly a common neighbor
        auto a = g.neighbors(lv);
        auto b = g.neighbors(lw);
        int count = 0;
        std::size_t i = 0, j = 0;
        while (i < a.size() && j < b.size() && count < k) {
            if (a[i] < b[j]) ++i;
            else if (a[i] > b[j]) ++j;
            else {
                if (a[i] != lego) ++count;
                ++i;
                ++j;
            }
        }
        return count;
    }

    int count = 0;
    std::vector<char> on_path(g.vertex_count(), 0);
    on_path[lv] = 1;
    // depth-bounded DFS with explicit stack of (vertex, neighbor cursor)
    struct Frame {
        Vertex vertex;
        std::size_t cursor;
    };
    std::vector<Frame> stack;
    stack.push_back({lv, 0});
    while (!stack.empty() && count < k) {
        Frame& top = stack.back();
        auto nbrs = g.neighbors(top.vertex);
        if (top.cursor >= nbrs.size()) {
            on_path[top.vertex] = 0;
            stack.pop_back();
            continue;
        }
        Vertex next = nbrs[top.cursor++];
        int depth = static_cast<int>(stack.size());  // edges used if we step to `next`
        if (next == lego || depth > params.max_len) continue;
        if (next == lw) {
            if (depth >= params.min_len) ++count;
            continue;  // simple paths end at the target
        }
        if (!on_path[next] && depth < params.max_len) {
            on_path[next] = 1;
            stack.push_back({next, 0});
        }
    }
    return std::min(count, k);
}

namespace detail {

struct CandidatePair {
    Vertex v, w;        // v < w by id
    Vertex ego;         // lexicographically smallest proposing ego
    std::uint32_t common;  // common-neighbor count of (v, w)
};

// Enumerates every non-adjacent pair at distance 2 exactly once, together
// with its common-neighbor count and the lexicographically smallest common
// neighbor (the deciding ego).
inline std::vector<CandidatePair> enumerate_candidates(const SynonymyGraph& sg, int jobs) {
    const Graph& g = sg.graph;
    const std::size_t n = g.vertex_count();
    std::size_t workers = static_cast<std::size_t>(std::max(1, jobs));
    workers = std::min(workers, std::max<std::size_t>(1, n));
    std::vector<std::vector<CandidatePair>> found(workers);

    auto run_worker = [&](std::size_t worker) {
        std::vector<std::uint32_t> common(n, 0);
        std::vector<Vertex> min_ego(n, 0);
        std::vector<char> is_neighbor(n, 0);
        std::vector<Vertex> touched;
        auto& out = found[worker];
        for (Vertex v = static_cast<Vertex>(worker); v < n; v += static_cast<Vertex>(workers)) {
            auto nbrs = g.neighbors(v);
            if (nbrs.empty()) continue;
            for (Vertex x : nbrs) is_neighbor[x] = 1;
            touched.clear();
            for (Vertex x : nbrs) {
                for (Vertex w : g.neighbors(x)) {
                    if (w <= v) continue;  // each unordered pair once, from its smaller id
                    if (common[w] == 0) {
                        touched.push_back(w);
                        min_ego[w] = x;
                    } else if (sg.word(x) < sg.word(min_ego[w])) {
                        min_ego[w] = x;
                    }
                    ++common[w];
                }
            }
            for (Vertex w : touched) {
                if (!is_neighbor[w]) out.push_back({v, w, min_ego[w], common[w]});
                common[w] = 0;
            }
            for (Vertex x : nbrs) is_neighbor[x] = 0;
        }
    };
    if (workers <= 1) {
        run_worker(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(run_worker, w);
        for (auto& t : threads) t.join();
    }

    std::size_t total = 0;
    for (const auto& part : found) total += part.size();
    std::vector<CandidatePair> all;
    all.reserve(total);
    for (auto& part : found) all.insert(all.end(), part.begin(), part.end());
    std::sort(all.begin(), all.end(), [](const CandidatePair& a, const CandidatePair& b) {
        if (a.v != b.v) return a.v < b.v;
        return a.w < b.w;
    });
    return all;
}

}  // namespace detail

/// Single-pass expansion: every candidate pair with enough supporting paths
/// becomes a new edge of weight `inserted_weight`. All path counts read the
/// original graph only, so the result is independent of evaluation order.
inline std::pair<SynonymyGraph, ExpansionReport> expand_graph(const SynonymyGraph& sg,
                                                              const ExpansionParams& params,
                                                              int jobs = 1) {
    params.validate();
    const Graph& g = sg.graph;
    ExpansionReport report;
    std::vector<detail::CandidatePair> candidates = detail::enumerate_candidates(sg, jobs);
    report.candidates_considered = candidates.size();

    std::vector<char> qualified(candidates.size(), 0);
    if (params.min_len == 2 && params.max_len == 2) {
        // common-neighbor fast path: the supporting paths of (v, w) are its
        // common neighbors minus the deciding ego, and the count is the same
        // under every proposing ego
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            qualified[i] = candidates[i].common >= static_cast<std::uint32_t>(params.min_paths) + 1;
        }
    } else {
        // group pairs by deciding ego so each order-2 ego network is built once
        std::vector<std::uint32_t> by_ego(candidates.size());
        for (std::uint32_t i = 0; i < candidates.size(); ++i) by_ego[i] = i;
        std::sort(by_ego.begin(), by_ego.end(), [&](std::uint32_t a, std::uint32_t b) {
            return candidates[a].ego < candidates[b].ego;
        });
        std::vector<std::pair<std::size_t, std::size_t>> groups;  // ranges into by_ego
        for (std::size_t i = 0; i < by_ego.size();) {
            std::size_t j = i;
            while (j < by_ego.size() && candidates[by_ego[j]].ego == candidates[by_ego[i]].ego) ++j;
            groups.emplace_back(i, j);
            i = j;
        }
        parallel_for(groups.size(), jobs, [&](std::size_t gi) {
            auto [begin, end] = groups[gi];
            EgoNetwork n2 = ego_network(g, candidates[by_ego[begin]].ego, 2);
            for (std::size_t i = begin; i < end; ++i) {
                const auto& c = candidates[by_ego[i]];
                qualified[by_ego[i]] =
                    count_paths_bounded(n2, c.v, c.w, params) >= params.min_paths;
            }
        });
    }

    GraphBuilder builder(g.vertex_count());
    g.for_each_edge([&](Vertex u, Vertex v, double w) { builder.add_edge(u, v, w); });
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (!qualified[i]) continue;
        builder.add_edge(candidates[i].v, candidates[i].w, params.inserted_weight);
        ++report.edges_added;
        ++report.added_by_ego[sg.word(candidates[i].ego)];
    }

    SynonymyGraph out;
    out.vocab = sg.vocab;
    out.graph = std::move(builder).build();
    return {std::move(out), std::move(report)};
}

/// Report file: one summary comment line, then `ego<TAB>added_count` sorted by ego.
inline std::string serialize_expansion_report(const ExpansionReport& report) {
    std::string out = "# edges_added=" + std::to_string(report.edges_added) +
                      " candidates_considered=" + std::to_string(report.candidates_considered) + "\n";
    for (const auto& [ego, count] : report.added_by_ego) {
        out += ego;
        out += '\t';
        out += std::to_string(count);
        out += '\n';
    }
    return out;
}

}  // namespace synsets
