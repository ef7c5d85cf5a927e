#pragma once

#include <algorithm>
#include <vector>

#include "synsets/graph.hpp"
#include "synsets/partition.hpp"

namespace synsets {

/// MaxMax fuzzy clustering. A directed graph D gets an arc v -> u for every u
/// whose maximal-weight neighbor set contains v (all ties kept). All vertices
/// start as roots; processing roots in ascending id order, a root plus all
/// vertices reachable from it in D form one cluster and every reached vertex
/// other than the root is demoted. Clusters may overlap.
inline FuzzyClustering maxmax(const Graph& g) {
    const std::size_t n = g.vertex_count();
    FuzzyClustering out;
    if (n == 0) return out;

    // arcs[v] = vertices u such that v is one of u's maximal-affinity neighbors
    std::vector<std::vector<Vertex>> arcs(n);
    for (Vertex u = 0; u < n; ++u) {
        auto nbrs = g.neighbors(u);
        auto ws = g.weights(u);
        if (nbrs.empty()) continue;
        double best = *std::max_element(ws.begin(), ws.end());
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            if (ws[i] == best) arcs[nbrs[i]].push_back(u);
        }
    }

    std::vector<char> root(n, 1);
    std::vector<char> visited(n, 0);
    std::vector<Vertex> stack, reached;
    for (Vertex r = 0; r < n; ++r) {
        if (!root[r]) continue;
        reached.clear();
        stack.assign(1, r);
        visited[r] = 1;
        reached.push_back(r);
        while (!stack.empty()) {
            Vertex x = stack.back();
            stack.pop_back();
            for (Vertex y : arcs[x]) {
                if (!visited[y]) {
                    visited[y] = 1;
                    reached.push_back(y);
                    stack.push_back(y);
                }
            }
        }
        for (Vertex v : reached) {
            visited[v] = 0;
            if (v != r) root[v] = 0;
        }
        std::sort(reached.begin(), reached.end());
        out.clusters.push_back(reached);
    }
    return out;
}

}  // namespace synsets
