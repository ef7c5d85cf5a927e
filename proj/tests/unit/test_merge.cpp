#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "support/generators.hpp"
#include "synsets/eval.hpp"
#include "synsets/merge.hpp"

using namespace synsets;

namespace {

// synsets with the given sizes over disjoint fresh words; id = position
struct Fixture {
    std::vector<Synset> synsets;
    Vocabulary vocab;
};

Fixture synsets_of_sizes(const std::vector<std::size_t>& sizes) {
    Fixture f;
    std::size_t next = 0;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        Synset s;
        s.id = static_cast<std::uint32_t>(i);
        for (std::size_t j = 0; j < sizes[i]; ++j)
            s.senses.push_back({f.vocab.intern(gen::word_label(next++)), 0});
        f.synsets.push_back(std::move(s));
    }
    return f;
}

std::multiset<std::pair<Vertex, std::uint32_t>> sense_multiset(const std::vector<Synset>& synsets) {
    std::multiset<std::pair<Vertex, std::uint32_t>> out;
    for (const auto& s : synsets)
        for (const Sense& sense : s.senses) out.insert({sense.word, sense.index});
    return out;
}

}  // namespace

TEST_CASE("plan_merges: the size-ordered merge-once hand trace") {
    // A(size 2), B(size 2), C(size 3); mutual pairs (A,B) and (B,C); t=1:
    // A takes B; C finds B consumed and stays unmerged.
    Fixture f = synsets_of_sizes({2, 2, 3});
    std::vector<MutualPair> pairs = {{0, 1, 0.9}, {1, 2, 0.8}};
    MergePlan plan = plan_merges(f.synsets, pairs, {1, 10});
    REQUIRE(plan.groups.size() == 1);
    REQUIRE(plan.groups[0].initiator == 0);
    REQUIRE(plan.groups[0].absorbed == std::vector<std::uint32_t>{1});
}

TEST_CASE("plan_merges: no mutual pairs means an empty plan") {
    Fixture f = synsets_of_sizes({2, 3});
    REQUIRE(plan_merges(f.synsets, std::vector<MutualPair>{}, {1, 10}).groups.empty());
}

TEST_CASE("plan_merges: t=2 takes both neighbors in similarity order") {
    Fixture f = synsets_of_sizes({2, 3, 4});
    std::vector<MutualPair> pairs = {{0, 1, 0.9}, {0, 2, 0.7}};
    MergePlan plan = plan_merges(f.synsets, pairs, {2, 10});
    REQUIRE(plan.groups.size() == 1);
    REQUIRE(plan.groups[0].initiator == 0);
    REQUIRE(plan.groups[0].absorbed == std::vector<std::uint32_t>{1, 2});
    REQUIRE(plan.groups[0].similarities == std::vector<double>{0.9, 0.7});
}

TEST_CASE("plan_merges: consumed synsets are skipped without spending the budget") {
    // D(size 1) grabs B first; A then skips B and takes C
    Fixture f = synsets_of_sizes({1, 2, 3, 3});  // ids: D=0? sizes asc: id0 size1
    // ids: 0 (size1), 1 (size2), 2 (size3), 3 (size3)
    std::vector<MutualPair> pairs = {{0, 1, 0.9}, {1, 2, 0.95}, {2, 3, 0.5}};
    MergePlan plan = plan_merges(f.synsets, pairs, {1, 10});
    REQUIRE(plan.groups.size() == 2);
    REQUIRE(plan.groups[0].initiator == 0);
    REQUIRE(plan.groups[0].absorbed == std::vector<std::uint32_t>{1});
    // synset 2 processes next: neighbor 1 is consumed, neighbor 3 is free
    REQUIRE(plan.groups[1].initiator == 2);
    REQUIRE(plan.groups[1].absorbed == std::vector<std::uint32_t>{3});
}

TEST_CASE("apply_merges: count arithmetic and identity") {
    Fixture f = synsets_of_sizes({2, 2, 2, 2, 2});
    MergePlan plan;
    plan.groups.push_back({0, {3}, {0.8}});
    std::vector<Synset> merged = apply_merges(f.synsets, plan, f.vocab);
    REQUIRE(merged.size() == 4);  // 5 - (2-1)

    std::vector<Synset> same = apply_merges(f.synsets, MergePlan{}, f.vocab);
    REQUIRE(same.size() == f.synsets.size());
    REQUIRE(sense_multiset(same) == sense_multiset(f.synsets));
}

TEST_CASE("apply_merges: new ids by descending size then smallest original id") {
    Fixture f = synsets_of_sizes({2, 2, 3});
    MergePlan plan;
    plan.groups.push_back({0, {1}, {0.9}});  // union has size 4 > 3
    std::vector<Synset> merged = apply_merges(f.synsets, plan, f.vocab);
    REQUIRE(merged.size() == 2);
    REQUIRE(merged[0].id == 0);
    REQUIRE(merged[0].senses.size() == 4);
    REQUIRE(merged[1].senses.size() == 3);
}

TEST_CASE("apply_merges: unknown id in the plan is an error") {
    Fixture f = synsets_of_sizes({2, 2});
    MergePlan plan;
    plan.groups.push_back({0, {7}, {0.5}});
    REQUIRE_THROWS_WITH(apply_merges(f.synsets, plan, f.vocab),
                        Catch::Matchers::ContainsSubstring("unknown synset"));
}

TEST_CASE("merge properties: sense conservation, count identity, merge-once") {
    SplitMix64 rng(808);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t n = 3 + rng.bounded(20);
        std::vector<std::size_t> sizes;
        for (std::size_t i = 0; i < n; ++i) sizes.push_back(1 + rng.bounded(5));
        Fixture f = synsets_of_sizes(sizes);

        // random unit vectors per word
        EmbeddingTable table;
        std::size_t dim = 4;
        for (std::size_t w = 0; w < f.vocab.size(); ++w) {
            std::vector<double> v(dim);
            double norm = 0.0;
            for (double& x : v) {
                x = rng.unit() * 2 - 1;
                norm += x * x;
            }
            for (double& x : v) x /= std::sqrt(norm);
            table.add(f.vocab.word(static_cast<Vertex>(w)), v);
        }
        SynsetVectorIndex index = SynsetVectorIndex::build(f.synsets, f.vocab, table);
        MergeParams params{1 + static_cast<int>(rng.bounded(4)), 1 + static_cast<int>(rng.bounded(6))};
        MergePlan plan = plan_merges(f.synsets, index, params);

        std::set<std::uint32_t> consumed;
        std::size_t eliminated = 0;
        for (const auto& g : plan.groups) {
            REQUIRE(!g.absorbed.empty());
            REQUIRE(consumed.insert(g.initiator).second);  // merge-once
            for (std::uint32_t id : g.absorbed) REQUIRE(consumed.insert(id).second);
            eliminated += g.absorbed.size();
        }

        std::vector<Synset> merged = apply_merges(f.synsets, plan, f.vocab);
        REQUIRE(merged.size() == f.synsets.size() - eliminated);
        REQUIRE(sense_multiset(merged) == sense_multiset(f.synsets));
    }
}

TEST_CASE("merge properties: recall never decreases") {
    SplitMix64 rng(909);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 4 + rng.bounded(12);
        std::vector<std::size_t> sizes;
        for (std::size_t i = 0; i < n; ++i) sizes.push_back(1 + rng.bounded(4));
        Fixture f = synsets_of_sizes(sizes);

        EmbeddingTable table;
        for (std::size_t w = 0; w < f.vocab.size(); ++w) {
            std::vector<double> v(3);
            double norm = 0.0;
            for (double& x : v) {
                x = rng.unit() * 2 - 1;
                norm += x * x;
            }
            for (double& x : v) x /= std::sqrt(norm);
            table.add(f.vocab.word(static_cast<Vertex>(w)), v);
        }
        SynsetVectorIndex index = SynsetVectorIndex::build(f.synsets, f.vocab, table);
        MergePlan plan = plan_merges(f.synsets, index, {2, 3});
        std::vector<Synset> merged = apply_merges(f.synsets, plan, f.vocab);

        // random gold clustering over the same words
        std::vector<std::vector<std::string>> gold;
        std::size_t cluster_count = 1 + rng.bounded(6);
        std::vector<std::vector<std::string>> buckets(cluster_count);
        for (std::size_t w = 0; w < f.vocab.size(); ++w)
            buckets[rng.bounded(cluster_count)].push_back(f.vocab.word(static_cast<Vertex>(w)));
        for (auto& b : buckets)
            if (!b.empty()) gold.push_back(std::move(b));

        double before = paired_prf(project_words(f.synsets, f.vocab), gold).recall;
        double after = paired_prf(project_words(merged, f.vocab), gold).recall;
        REQUIRE(after >= before);
    }
}

TEST_CASE("merge audit serialization") {
    MergePlan plan;
    plan.groups.push_back({4, {7, 9}, {0.866, 0.5}});
    REQUIRE(serialize_merge_audit(plan) == "0\t4\t7:0.866000, 9:0.500000\n");
}

TEST_CASE("merge parameter validation") {
    Fixture f = synsets_of_sizes({2});
    REQUIRE_THROWS_AS(plan_merges(f.synsets, std::vector<MutualPair>{}, {0, 10}), Error);
    REQUIRE_THROWS_AS(plan_merges(f.synsets, std::vector<MutualPair>{}, {1, 0}), Error);
}
