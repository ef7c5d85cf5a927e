#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "synsets/graph.hpp"
#include "synsets/partition.hpp"
#include "synsets/prng.hpp"

namespace synsets {

struct ChineseWhispersOptions {
    std::uint64_t seed = 0;
    int max_iterations = 20;
};

struct ChineseWhispersResult {
    Partition partition;
    bool reached_fixed_point = false;
    int sweeps = 0;
};

/// Chinese Whispers label propagation. Every vertex starts with its own label;
/// sweeps visit vertices in a seeded shuffle and each vertex adopts the label
/// with the largest summed edge weight among its neighbors (asynchronous
/// updates). Ties: keep the current label if it is among the winners, else
/// prefer the tied label whose supporting neighbor shares the most common
/// neighbors with the vertex, else the smallest label id. The triadic
/// preference keeps unit-weight ties from leaking labels across bridges
/// between dense regions.
inline ChineseWhispersResult chinese_whispers(const Graph& g, const ChineseWhispersOptions& opts = {}) {
    const std::size_t n = g.vertex_count();
    ChineseWhispersResult result;
    if (n == 0) {
        result.partition = Partition{};
        result.reached_fixed_point = true;
        return result;
    }
    if (opts.max_iterations < 1) throw usage_error("chinese whispers: max_iterations must be >= 1");

    std::vector<std::uint32_t> labels(n);
    std::iota(labels.begin(), labels.end(), 0u);
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), 0u);
    SplitMix64 rng(opts.seed);

    // scratch: per-label accumulated weight, valid when stamp matches
    std::vector<double> weight(n, 0.0);
    std::vector<std::uint32_t> stamp(n, 0);
    std::vector<std::uint32_t> touched;
    std::uint32_t current_stamp = 0;

    int sweep = 0;
    for (; sweep < opts.max_iterations; ++sweep) {
        seeded_shuffle(order, rng);
        bool changed = false;
        for (Vertex u : order) {
            auto nbrs = g.neighbors(u);
            if (nbrs.empty()) continue;
            auto ws = g.weights(u);
            ++current_stamp;
            touched.clear();
            for (std::size_t i = 0; i < nbrs.size(); ++i) {
                std::uint32_t l = labels[nbrs[i]];
                if (stamp[l] != current_stamp) {
                    stamp[l] = current_stamp;
                    weight[l] = 0.0;
                    touched.push_back(l);
                }
                weight[l] += ws[i];
            }
            double best = 0.0;
            for (std::uint32_t l : touched) best = std::max(best, weight[l]);

            std::uint32_t chosen;
            if (stamp[labels[u]] == current_stamp && weight[labels[u]] == best) {
                chosen = labels[u];
            } else {
                std::size_t tie_count = 0;
                std::uint32_t smallest = 0xffffffffu;
                for (std::uint32_t l : touched) {
                    if (weight[l] == best) {
                        ++tie_count;
                        smallest = std::min(smallest, l);
                    }
                }
                if (tie_count == 1) {
                    chosen = smallest;
                } else {
                    // triadic support: for each tied label, the best supporter's
                    // common-neighbor count with u
                    std::size_t best_support = 0;
                    bool have = false;
                    chosen = smallest;
                    for (std::size_t i = 0; i < nbrs.size(); ++i) {
                        std::uint32_t l = labels[nbrs[i]];
                        if (weight[l] != best) continue;
                        std::size_t support = g.common_neighbor_count(u, nbrs[i]);
                        if (!have || support > best_support ||
                            (support == best_support && l < chosen)) {
                            have = true;
                            best_support = support;
                            chosen = l;
                        }
                    }
                }
            }
            if (chosen != labels[u]) {
                labels[u] = chosen;
                changed = true;
            }
        }
        if (!changed) {
            result.reached_fixed_point = true;
            ++sweep;
            break;
        }
    }
    result.sweeps = sweep;
    result.partition = canonicalize(std::move(labels));
    return result;
}

}  // namespace synsets
