#pragma once

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "synsets/embeddings.hpp"
#include "synsets/watset.hpp"

namespace synsets {

struct MergeParams {
    int max_merges = 1;  // t: neighbors a synset may absorb
    int knn = 10;        // k: mutual-nearest-neighbor width

    void validate() const {
        if (max_merges < 1) throw usage_error("merge: max merges must be >= 1");
        if (knn < 1) throw usage_error("merge: knn must be >= 1");
    }
};

struct MergeGroup {
    std::uint32_t initiator;
    std::vector<std::uint32_t> absorbed;     // in selection order
    std::vector<double> similarities;        // parallel to absorbed
};

struct MergePlan {
    std::vector<MergeGroup> groups;  // pairwise disjoint; each id in at most one group
};

/// Greedy merge planning over precomputed mutual pairs: synsets are processed
/// in ascending size order (ties by ascending id); each unconsumed synset
/// takes its unconsumed mutual neighbors in descending similarity order, up to
/// t of them, and the whole group is marked consumed. A synset is merged at
/// most once.
inline MergePlan plan_merges(const std::vector<Synset>& synsets,
                             const std::vector<MutualPair>& pairs, const MergeParams& params) {
    params.validate();
    std::unordered_map<std::uint32_t, std::vector<std::pair<std::uint32_t, double>>> neighbors;
    for (const MutualPair& p : pairs) {
        neighbors[p.a].emplace_back(p.b, p.similarity);
        neighbors[p.b].emplace_back(p.a, p.similarity);
    }
    for (auto& [id, list] : neighbors) {
        std::sort(list.begin(), list.end(), [](const auto& x, const auto& y) {
            if (x.second != y.second) return x.second > y.second;
            return x.first < y.first;
        });
    }

    std::vector<const Synset*> order;
    order.reserve(synsets.size());
    for (const Synset& s : synsets) order.push_back(&s);
    std::sort(order.begin(), order.end(), [](const Synset* a, const Synset* b) {
        if (a->senses.size() != b->senses.size()) return a->senses.size() < b->senses.size();
        return a->id < b->id;
    });

    std::unordered_map<std::uint32_t, char> consumed;
    MergePlan plan;
    for (const Synset* s : order) {
        if (consumed.count(s->id)) continue;
        auto it = neighbors.find(s->id);
        if (it == neighbors.end()) continue;
        MergeGroup group;
        group.initiator = s->id;
        for (const auto& [other, sim] : it->second) {
            if (static_cast<int>(group.absorbed.size()) >= params.max_merges) break;
            if (consumed.count(other)) continue;
            group.absorbed.push_back(other);
            group.similarities.push_back(sim);
        }
        if (group.absorbed.empty()) continue;  // nothing available: stays intact, not consumed
        consumed[s->id] = 1;
        for (std::uint32_t id : group.absorbed) consumed[id] = 1;
        plan.groups.push_back(std::move(group));
    }
    return plan;
}

inline MergePlan plan_merges(const std::vector<Synset>& synsets, const SynsetVectorIndex& index,
                             const MergeParams& params) {
    params.validate();
    return plan_merges(synsets, mutual_pairs(index, params.knn), params);
}

/// Replaces each planned group by the union of its members' sense sets.
/// Synsets outside any group pass through. New ids are assigned by descending
/// size, ties by smallest original id.
inline std::vector<Synset> apply_merges(const std::vector<Synset>& synsets, const MergePlan& plan,
                                        const Vocabulary& vocab) {
    std::unordered_map<std::uint32_t, std::size_t> position;
    for (std::size_t i = 0; i < synsets.size(); ++i) {
        if (!position.emplace(synsets[i].id, i).second)
            throw data_error("duplicate synset id " + std::to_string(synsets[i].id));
    }
    auto locate = [&](std::uint32_t id) {
        auto it = position.find(id);
        if (it == position.end()) throw data_error("merge plan names unknown synset " + std::to_string(id));
        return it->second;
    };

    struct Pending {
        std::vector<Sense> senses;
        std::uint32_t min_original;
    };
    std::vector<Pending> merged;
    std::vector<char> in_group(synsets.size(), 0);
    for (const MergeGroup& group : plan.groups) {
        Pending p;
        p.min_original = group.initiator;
        std::size_t init = locate(group.initiator);
        if (in_group[init]) throw data_error("synset merged twice: " + std::to_string(group.initiator));
        in_group[init] = 1;
        p.senses = synsets[init].senses;
        for (std::uint32_t id : group.absorbed) {
            std::size_t pos = locate(id);
            if (in_group[pos]) throw data_error("synset merged twice: " + std::to_string(id));
            in_group[pos] = 1;
            p.senses.insert(p.senses.end(), synsets[pos].senses.begin(), synsets[pos].senses.end());
            p.min_original = std::min(p.min_original, id);
        }
        merged.push_back(std::move(p));
    }
    for (std::size_t i = 0; i < synsets.size(); ++i) {
        if (!in_group[i]) merged.push_back({synsets[i].senses, synsets[i].id});
    }

    std::sort(merged.begin(), merged.end(), [](const Pending& a, const Pending& b) {
        if (a.senses.size() != b.senses.size()) return a.senses.size() > b.senses.size();
        return a.min_original < b.min_original;
    });
    std::vector<Synset> out;
    out.reserve(merged.size());
    for (std::uint32_t i = 0; i < merged.size(); ++i) {
        Synset s;
        s.id = i;
        s.senses = std::move(merged[i].senses);
        detail::sort_senses(s.senses, vocab);
        out.push_back(std::move(s));
    }
    return out;
}

/// Audit line per group: `group_index<TAB>initiator<TAB>member:similarity, ...`
inline std::string serialize_merge_audit(const MergePlan& plan) {
    std::string out;
    for (std::size_t g = 0; g < plan.groups.size(); ++g) {
        const MergeGroup& group = plan.groups[g];
        out += std::to_string(g);
        out += '\t';
        out += std::to_string(group.initiator);
        out += '\t';
        for (std::size_t i = 0; i < group.absorbed.size(); ++i) {
            if (i) out += ", ";
            out += std::to_string(group.absorbed[i]);
            out += ':';
            out += format_fixed6(group.similarities[i]);
        }
        out += '\n';
    }
    return out;
}

}  // namespace synsets
