#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "synsets/text.hpp"
#include "synsets/vocab.hpp"

namespace synsets {

/// Paired precision/recall/F-score over within-cluster word pairs, evaluated
/// on the intersection of the two lexicons.
struct EvalReport {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::size_t tp = 0;
    std::size_t predicted_pairs = 0;
    std::size_t gold_pairs = 0;
    std::size_t lexicon_size = 0;
};

using WordClusters = std::vector<std::vector<std::string>>;

namespace detail {

inline std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

}  // namespace detail

/// Every cluster of n members yields n(n-1)/2 unordered pairs; the result is
/// the set union across clusters (a pair generated twice counts once).
inline std::unordered_set<std::uint64_t> cluster_pairs(const std::vector<std::vector<Vertex>>& clusters) {
    std::unordered_set<std::uint64_t> pairs;
    for (const auto& cluster : clusters) {
        for (std::size_t i = 0; i < cluster.size(); ++i) {
            for (std::size_t j = i + 1; j < cluster.size(); ++j) {
                pairs.insert(detail::pair_key(cluster[i], cluster[j]));
            }
        }
    }
    return pairs;
}

/// Intersects every cluster with the lexicon and drops clusters that become empty.
inline WordClusters restrict_to_lexicon(const WordClusters& clusters,
                                        const std::unordered_set<std::string>& lexicon) {
    WordClusters out;
    for (const auto& cluster : clusters) {
        std::vector<std::string> kept;
        for (const auto& w : cluster) {
            if (lexicon.count(w)) kept.push_back(w);
        }
        if (!kept.empty()) out.push_back(std::move(kept));
    }
    return out;
}

inline EvalReport paired_prf(const WordClusters& predicted, const WordClusters& gold) {
    // lexicon = words(predicted) ∩ words(gold)
    std::unordered_set<std::string> predicted_words, lexicon;
    for (const auto& c : predicted) predicted_words.insert(c.begin(), c.end());
    for (const auto& c : gold) {
        for (const auto& w : c) {
            if (predicted_words.count(w)) lexicon.insert(w);
        }
    }

    Vocabulary ids;
    auto to_ids = [&](const WordClusters& clusters) {
        std::vector<std::vector<Vertex>> out;
        for (const auto& cluster : clusters) {
            std::vector<Vertex> members;
            for (const auto& w : cluster) {
                if (lexicon.count(w)) members.push_back(ids.intern(w));
            }
            // unique within a cluster: a repeated word adds no pair
            std::sort(members.begin(), members.end());
            members.erase(std::unique(members.begin(), members.end()), members.end());
            if (!members.empty()) out.push_back(std::move(members));
        }
        return out;
    };

    auto predicted_pairs = cluster_pairs(to_ids(predicted));
    auto gold_pairs = cluster_pairs(to_ids(gold));

    std::size_t tp = 0;
    const auto& smaller = predicted_pairs.size() <= gold_pairs.size() ? predicted_pairs : gold_pairs;
    const auto& larger = predicted_pairs.size() <= gold_pairs.size() ? gold_pairs : predicted_pairs;
    for (std::uint64_t key : smaller) {
        if (larger.count(key)) ++tp;
    }

    EvalReport report;
    report.tp = tp;
    report.predicted_pairs = predicted_pairs.size();
    report.gold_pairs = gold_pairs.size();
    report.lexicon_size = lexicon.size();
    report.precision = predicted_pairs.empty() ? 0.0 : static_cast<double>(tp) / predicted_pairs.size();
    report.recall = gold_pairs.empty() ? 0.0 : static_cast<double>(tp) / gold_pairs.size();
    report.f1 = (report.precision + report.recall) == 0.0
                    ? 0.0
                    : 2.0 * report.precision * report.recall / (report.precision + report.recall);
    return report;
}

/// Machine-readable report: `precision<TAB>recall<TAB>f1<TAB>tp<TAB>pp<TAB>pg<TAB>lexicon`.
inline std::string serialize_eval_line(const EvalReport& r) {
    std::string out;
    out += format_fixed6(r.precision);
    out += '\t';
    out += format_fixed6(r.recall);
    out += '\t';
    out += format_fixed6(r.f1);
    out += '\t';
    out += std::to_string(r.tp);
    out += '\t';
    out += std::to_string(r.predicted_pairs);
    out += '\t';
    out += std::to_string(r.gold_pairs);
    out += '\t';
    out += std::to_string(r.lexicon_size);
    out += '\n';
    return out;
}

inline std::string describe_eval(const EvalReport& r) {
    std::string out;
    out += "lexicon intersection: " + std::to_string(r.lexicon_size) + " words\n";
    out += "predicted pairs: " + std::to_string(r.predicted_pairs) + ", gold pairs: " +
           std::to_string(r.gold_pairs) + ", shared: " + std::to_string(r.tp) + "\n";
    out += "precision=" + format_fixed6(r.precision) + " recall=" + format_fixed6(r.recall) +
           " f1=" + format_fixed6(r.f1) + "\n";
    out += "(conventions: empty predicted pair set gives precision 0; empty gold pair set gives recall 0)\n";
    return out;
}

}  // namespace synsets
