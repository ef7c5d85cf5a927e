#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "synsets/graph.hpp"
#include "synsets/text.hpp"
#include "synsets/vocab.hpp"

namespace synsets {

/// Total assignment of vertices to clusters. Canonical form: cluster ids are
/// contiguous from 0, relabeled by order of first appearance over vertices in
/// ascending id order.
struct Partition {
    std::vector<std::uint32_t> assignment;
    std::uint32_t cluster_count = 0;

    std::vector<std::vector<Vertex>> clusters() const {
        std::vector<std::vector<Vertex>> out(cluster_count);
        for (Vertex v = 0; v < assignment.size(); ++v) out[assignment[v]].push_back(v);
        return out;
    }
};

inline Partition canonicalize(std::vector<std::uint32_t> raw) {
    constexpr std::uint32_t unmapped = 0xffffffffu;
    std::uint32_t max_label = 0;
    for (std::uint32_t l : raw) max_label = std::max(max_label, l);
    std::vector<std::uint32_t> remap(raw.empty() ? 0 : max_label + 1, unmapped);
    std::uint32_t next = 0;
    for (std::uint32_t& l : raw) {
        if (remap[l] == unmapped) remap[l] = next++;
        l = remap[l];
    }
    return Partition{std::move(raw), next};
}

/// Possibly overlapping clusters; the union covers every vertex.
struct FuzzyClustering {
    std::vector<std::vector<Vertex>> clusters;  // members sorted ascending
};

/// Hardens a fuzzy clustering: each vertex goes to the first cluster that
/// contains it (clusters in emission order), then labels are canonicalized.
inline Partition to_partition(const FuzzyClustering& fuzzy, std::size_t vertex_count) {
    constexpr std::uint32_t unset = 0xffffffffu;
    std::vector<std::uint32_t> raw(vertex_count, unset);
    for (std::uint32_t c = 0; c < fuzzy.clusters.size(); ++c) {
        for (Vertex v : fuzzy.clusters[c]) {
            if (raw[v] == unset) raw[v] = c;
        }
    }
    for (std::size_t v = 0; v < raw.size(); ++v) {
        if (raw[v] == unset) throw data_error("fuzzy clustering does not cover vertex " + std::to_string(v));
    }
    return canonicalize(std::move(raw));
}

/// One cluster per line: `cluster_id<TAB>size<TAB>word1, word2, ...` with
/// members sorted lexicographically.
inline std::string serialize_clusters(const std::vector<std::vector<Vertex>>& clusters,
                                      const Vocabulary& vocab) {
    std::string out;
    for (std::size_t c = 0; c < clusters.size(); ++c) {
        std::vector<std::string> words;
        words.reserve(clusters[c].size());
        for (Vertex v : clusters[c]) words.push_back(vocab.word(v));
        std::sort(words.begin(), words.end());
        out += std::to_string(c);
        out += '\t';
        out += std::to_string(words.size());
        out += '\t';
        for (std::size_t i = 0; i < words.size(); ++i) {
            if (i) out += ", ";
            out += words[i];
        }
        out += '\n';
    }
    return out;
}

}  // namespace synsets
