#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "synsets/error.hpp"

namespace synsets {

using Vertex = std::uint32_t;

/// Undirected weighted simple graph over dense integer vertices.
/// Immutable after construction; adjacency lists are sorted by neighbor id,
/// so edge lookup is a binary search and list intersections are merges.
class Graph {
public:
    Graph() = default;

    std::size_t vertex_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t edge_count() const { return edge_count_; }

    std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

    std::span<const Vertex> neighbors(Vertex v) const {
        return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
    }

    std::span<const double> weights(Vertex v) const {
        return {weights_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
    }

    bool has_edge(Vertex u, Vertex v) const {
        auto nbrs = neighbors(u);
        return std::binary_search(nbrs.begin(), nbrs.end(), v);
    }

    // 0.0 when the edge is absent (all real weights are positive).
    double edge_weight(Vertex u, Vertex v) const {
        auto nbrs = neighbors(u);
        auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v);
        if (it == nbrs.end() || *it != v) return 0.0;
        return weights_[offsets_[u] + static_cast<std::size_t>(it - nbrs.begin())];
    }

    double total_weight() const {
        double sum = 0.0;
        for (double w : weights_) sum += w;
        return sum / 2.0;
    }

    std::size_t common_neighbor_count(Vertex u, Vertex v) const {
        auto a = neighbors(u);
        auto b = neighbors(v);
        std::size_t count = 0, i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            if (a[i] < b[j]) ++i;
            else if (a[i] > b[j]) ++j;
            else { ++count; ++i; ++j; }
        }
        return count;
    }

    // Visits each undirected edge once, with u < v.
    template <typename Fn>
    void for_each_edge(Fn&& fn) const {
        for (Vertex u = 0; u < vertex_count(); ++u) {
            auto nbrs = neighbors(u);
            auto ws = weights(u);
            for (std::size_t i = 0; i < nbrs.size(); ++i) {
                if (nbrs[i] > u) fn(u, nbrs[i], ws[i]);
            }
        }
    }

private:
    std::vector<std::size_t> offsets_;
    std::vector<Vertex> adjacency_;
    std::vector<double> weights_;
    std::size_t edge_count_ = 0;

    friend class GraphBuilder;
};

/// Accumulates edges, then builds the CSR form. Duplicate pairs keep the
/// maximum weight; self-loops and non-positive weights are rejected.
class GraphBuilder {
public:
    explicit GraphBuilder(std::size_t vertex_count = 0) : n_(vertex_count) {}

    void ensure_vertex(Vertex v) {
        if (static_cast<std::size_t>(v) + 1 > n_) n_ = static_cast<std::size_t>(v) + 1;
    }

    void add_edge(Vertex u, Vertex v, double weight) {
        if (u == v) throw data_error("self-loop rejected: vertex " + std::to_string(u));
        if (!(weight > 0.0)) throw data_error("non-positive edge weight: " + std::to_string(weight));
        ensure_vertex(u);
        ensure_vertex(v);
        if (u > v) std::swap(u, v);
        edges_.push_back({u, v, weight});
    }

    std::size_t vertex_count() const { return n_; }
    std::size_t pending_edges() const { return edges_.size(); }

    Graph build() && {
        std::sort(edges_.begin(), edges_.end(), [](const Entry& a, const Entry& b) {
            if (a.u != b.u) return a.u < b.u;
            return a.v < b.v;
        });
        // duplicate pairs resolve to max weight
        std::size_t out = 0;
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            if (out > 0 && edges_[out - 1].u == edges_[i].u && edges_[out - 1].v == edges_[i].v) {
                edges_[out - 1].weight = std::max(edges_[out - 1].weight, edges_[i].weight);
            } else {
                edges_[out++] = edges_[i];
            }
        }
        edges_.resize(out);

        Graph g;
        g.edge_count_ = edges_.size();
        std::vector<std::size_t> degree(n_, 0);
        for (const Entry& e : edges_) {
            ++degree[e.u];
            ++degree[e.v];
        }
        g.offsets_.assign(n_ + 1, 0);
        for (std::size_t v = 0; v < n_; ++v) g.offsets_[v + 1] = g.offsets_[v] + degree[v];
        g.adjacency_.resize(g.offsets_[n_]);
        g.weights_.resize(g.offsets_[n_]);
        std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
        for (const Entry& e : edges_) {
            g.adjacency_[cursor[e.u]] = e.v;
            g.weights_[cursor[e.u]++] = e.weight;
            g.adjacency_[cursor[e.v]] = e.u;
            g.weights_[cursor[e.v]++] = e.weight;
        }
        // Edges arrive sorted by (u, v), so each u's slice is already sorted;
        // the v-side slices are sorted too because u runs in ascending order.
        return g;
    }

private:
    struct Entry {
        Vertex u, v;
        double weight;
    };

    std::size_t n_ = 0;
    std::vector<Entry> edges_;
};

/// Subgraph of `g` induced by `members` (sorted, unique parent vertices).
/// Local vertex i corresponds to members[i].
inline Graph induced_subgraph(const Graph& g, std::span<const Vertex> members) {
    GraphBuilder builder(members.size());
    for (std::size_t local = 0; local < members.size(); ++local) {
        Vertex parent = members[local];
        auto nbrs = g.neighbors(parent);
        auto ws = g.weights(parent);
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            if (nbrs[i] <= parent) continue;  // each edge once
            auto it = std::lower_bound(members.begin(), members.end(), nbrs[i]);
            if (it != members.end() && *it == nbrs[i]) {
                builder.add_edge(static_cast<Vertex>(local),
                                 static_cast<Vertex>(it - members.begin()), ws[i]);
            }
        }
    }
    return std::move(builder).build();
}

}  // namespace synsets
