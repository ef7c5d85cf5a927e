#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "synsets/clustering.hpp"

using namespace synsets;

namespace {

std::vector<int> components_of(const Graph& g) {
    std::vector<int> comp(g.vertex_count(), -1);
    int c = 0;
    for (Vertex s = 0; s < g.vertex_count(); ++s) {
        if (comp[s] != -1) continue;
        std::vector<Vertex> stack{s};
        comp[s] = c;
        while (!stack.empty()) {
            Vertex u = stack.back();
            stack.pop_back();
            for (Vertex v : g.neighbors(u)) {
                if (comp[v] == -1) {
                    comp[v] = c;
                    stack.push_back(v);
                }
            }
        }
        ++c;
    }
    return comp;
}

std::set<std::set<Vertex>> cluster_sets(const Partition& p) {
    std::set<std::set<Vertex>> out;
    for (const auto& members : p.clusters()) out.insert(std::set<Vertex>(members.begin(), members.end()));
    return out;
}

void check_partition_invariants(const Partition& p, std::size_t n) {
    REQUIRE(p.assignment.size() == n);
    std::set<std::uint32_t> used;
    for (std::uint32_t l : p.assignment) {
        REQUIRE(l < p.cluster_count);
        used.insert(l);
    }
    REQUIRE(used.size() == p.cluster_count);  // contiguous ids, no gaps
    // canonical: first appearance over ascending vertex ids is ascending
    std::uint32_t next = 0;
    for (std::uint32_t l : p.assignment) {
        if (l == next) ++next;
        REQUIRE(l <= next);
    }
}

void check_component_safety(const Graph& g, const std::vector<std::vector<Vertex>>& clusters) {
    std::vector<int> comp = components_of(g);
    for (const auto& members : clusters) {
        REQUIRE(!members.empty());
        for (Vertex v : members) REQUIRE(comp[v] == comp[members.front()]);
    }
}

}  // namespace

TEST_CASE("canonicalize relabels by first appearance over sorted vertices") {
    Partition p = canonicalize({5, 3, 5, 1});
    REQUIRE(p.assignment == std::vector<std::uint32_t>{0, 1, 0, 2});
    REQUIRE(p.cluster_count == 3);
}

TEST_CASE("to_partition assigns each vertex to its first containing cluster") {
    FuzzyClustering fuzzy;
    fuzzy.clusters = {{0, 1}, {1, 2}};
    Partition p = to_partition(fuzzy, 3);
    REQUIRE(p.assignment == std::vector<std::uint32_t>{0, 0, 1});
}

// --- Chinese Whispers --------------------------------------------------------

TEST_CASE("cw: a unit-weight clique converges to a single label") {
    auto r = chinese_whispers(gen::graph_of(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}), {123, 20});
    REQUIRE(r.partition.cluster_count == 1);
    REQUIRE(r.reached_fixed_point);
}

TEST_CASE("cw: disconnected components never exchange labels") {
    Graph g = gen::graph_of(6, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}, {3, 4, 1}, {4, 5, 1}, {3, 5, 1}});
    auto r = chinese_whispers(g, {5, 20});
    REQUIRE(r.partition.cluster_count == 2);
    REQUIRE(cluster_sets(r.partition) == std::set<std::set<Vertex>>{{0, 1, 2}, {3, 4, 5}});
}

TEST_CASE("cw: bridge-joined triangles recover the bipartition in >= 95 of 100 seeds") {
    Graph g = gen::barbell();
    int recovered = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto r = chinese_whispers(g, {seed, 20});
        if (cluster_sets(r.partition) == std::set<std::set<Vertex>>{{0, 1, 2}, {3, 4, 5}})
            ++recovered;
    }
    INFO("recovered " << recovered << "/100");
    REQUIRE(recovered >= 95);
}

TEST_CASE("cw: empty graph gives an empty partition") {
    auto r = chinese_whispers(Graph{}, {0, 20});
    REQUIRE(r.partition.assignment.empty());
    REQUIRE(r.partition.cluster_count == 0);
}

TEST_CASE("cw: fixed point means no single relabel increases its label weight") {
    SplitMix64 rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
        Graph g = trial % 2 == 0 ? gen::random_unit_graph(2 + rng.bounded(16), 0.3, rng)
                                 : gen::random_weighted_graph(2 + rng.bounded(16), 0.3, rng);
        auto r = chinese_whispers(g, {rng.next(), 50});
        if (!r.reached_fixed_point) continue;
        for (Vertex u = 0; u < g.vertex_count(); ++u) {
            auto nbrs = g.neighbors(u);
            auto ws = g.weights(u);
            if (nbrs.empty()) continue;
            std::map<std::uint32_t, double> votes;
            for (std::size_t i = 0; i < nbrs.size(); ++i)
                votes[r.partition.assignment[nbrs[i]]] += ws[i];
            double own = votes.count(r.partition.assignment[u]) ? votes[r.partition.assignment[u]] : 0.0;
            for (const auto& [label, weight] : votes) REQUIRE(weight <= own + 1e-12);
        }
    }
}

TEST_CASE("cw: deterministic for a fixed seed") {
    SplitMix64 rng(11);
    Graph g = gen::random_weighted_graph(30, 0.15, rng);
    auto a = chinese_whispers(g, {99, 20});
    auto b = chinese_whispers(g, {99, 20});
    REQUIRE(a.partition.assignment == b.partition.assignment);
}

// --- Markov Clustering -------------------------------------------------------

TEST_CASE("mcl: a single edge is one cluster") {
    auto r = markov_clustering(gen::graph_of(2, {{0, 1, 1}}));
    REQUIRE(r.converged);
    REQUIRE(r.partition.cluster_count == 1);
}

TEST_CASE("mcl: two disjoint edges are two clusters") {
    auto r = markov_clustering(gen::graph_of(4, {{0, 1, 1}, {2, 3, 1}}));
    REQUIRE(r.partition.cluster_count == 2);
    REQUIRE(cluster_sets(r.partition) == std::set<std::set<Vertex>>{{0, 1}, {2, 3}});
}

TEST_CASE("mcl: bridge-joined triangles split into the two triangles") {
    // frozen from the dense-matrix run (e=2, r=2): converges in 8 iterations
    auto r = markov_clustering(gen::barbell());
    REQUIRE(r.converged);
    REQUIRE(cluster_sets(r.partition) == std::set<std::set<Vertex>>{{0, 1, 2}, {3, 4, 5}});

    auto d = oracle::dense_mcl(gen::barbell());
    REQUIRE(d.converged);
    REQUIRE(r.partition.assignment == d.assignment);
}

TEST_CASE("mcl: matches the dense oracle on random graphs") {
    SplitMix64 rng(321);
    for (int trial = 0; trial < 60; ++trial) {
        Graph g = trial % 2 == 0 ? gen::random_unit_graph(2 + rng.bounded(12), 0.3, rng)
                                 : gen::random_weighted_graph(2 + rng.bounded(12), 0.3, rng);
        auto sparse = markov_clustering(g);
        auto dense = oracle::dense_mcl(g);
        REQUIRE(sparse.converged == dense.converged);
        REQUIRE(sparse.partition.assignment == dense.assignment);
    }
}

TEST_CASE("mcl: columns stay stochastic to 1e-9 after every normalization") {
    SplitMix64 rng(555);
    for (int trial = 0; trial < 20; ++trial) {
        Graph g = gen::random_weighted_graph(3 + rng.bounded(20), 0.25, rng);
        auto r = markov_clustering(g);
        REQUIRE(r.max_column_sum_error <= 1e-9);
    }
}

TEST_CASE("mcl: non-convergence is reported, with a usable extraction") {
    MclOptions opts;
    opts.max_iterations = 1;  // the barbell needs several
    auto r = markov_clustering(gen::barbell(), opts);
    REQUIRE_FALSE(r.converged);
    check_partition_invariants(r.partition, 6);
}

TEST_CASE("mcl: identical results for any job count") {
    SplitMix64 rng(777);
    Graph g = gen::random_weighted_graph(40, 0.2, rng);
    MclOptions one;
    one.jobs = 1;
    MclOptions four;
    four.jobs = 4;
    REQUIRE(markov_clustering(g, one).partition.assignment ==
            markov_clustering(g, four).partition.assignment);
}

TEST_CASE("mcl: parameter validation") {
    REQUIRE_THROWS_AS(markov_clustering(gen::barbell(), MclOptions{1, 2.0, 1e-5, 10, 1e-5, 1}), Error);
    REQUIRE_THROWS_AS(markov_clustering(gen::barbell(), MclOptions{2, 1.0, 1e-5, 10, 1e-5, 1}), Error);
    REQUIRE_THROWS_AS(markov_clustering(gen::barbell(), MclOptions{2, 2.0, 0.0, 10, 1e-5, 1}), Error);
}

// --- MaxMax ------------------------------------------------------------------

TEST_CASE("maxmax: weighted path collapses into one rooted cluster") {
    // a-b weight 3, b-c weight 2
    FuzzyClustering f = maxmax(gen::graph_of(3, {{0, 1, 3}, {1, 2, 2}}));
    REQUIRE(f.clusters == std::vector<std::vector<Vertex>>{{0, 1, 2}});
}

TEST_CASE("maxmax: disjoint unit edges stay separate") {
    FuzzyClustering f = maxmax(gen::graph_of(4, {{0, 1, 1}, {2, 3, 1}}));
    REQUIRE(f.clusters == std::vector<std::vector<Vertex>>{{0, 1}, {2, 3}});
}

TEST_CASE("maxmax: all-ties triangle forms a single cluster") {
    FuzzyClustering f = maxmax(gen::graph_of(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}));
    REQUIRE(f.clusters == std::vector<std::vector<Vertex>>{{0, 1, 2}});
}

TEST_CASE("maxmax: clusters can overlap") {
    // path a-b-c-d with weights 1,2,1: a forms its own cluster, then b reaches
    // a, c and d, so a sits in two clusters
    FuzzyClustering f = maxmax(gen::graph_of(4, {{0, 1, 1}, {1, 2, 2}, {2, 3, 1}}));
    REQUIRE(f.clusters == std::vector<std::vector<Vertex>>{{0}, {0, 1, 2, 3}});
}

TEST_CASE("maxmax: fuzzy invariants hold on random graphs") {
    SplitMix64 rng(888);
    for (int trial = 0; trial < 60; ++trial) {
        Graph g = trial % 2 == 0 ? gen::random_unit_graph(1 + rng.bounded(15), 0.3, rng)
                                 : gen::random_weighted_graph(1 + rng.bounded(15), 0.3, rng);
        FuzzyClustering f = maxmax(g);
        std::set<Vertex> covered;
        std::set<std::set<Vertex>> distinct;
        for (const auto& c : f.clusters) {
            REQUIRE(!c.empty());
            covered.insert(c.begin(), c.end());
            REQUIRE(distinct.insert(std::set<Vertex>(c.begin(), c.end())).second);  // no duplicates
        }
        REQUIRE(covered.size() == g.vertex_count());
        check_component_safety(g, f.clusters);
    }
}

// --- shared properties ---------------------------------------------------------

TEST_CASE("all algorithms: totality, canonical ids, component safety") {
    SplitMix64 rng(31337);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 1 + rng.bounded(14);
        Graph g = trial % 2 == 0 ? gen::random_unit_graph(n, 0.25, rng)
                                 : gen::random_weighted_graph(n, 0.25, rng);
        for (Algorithm a : {Algorithm::cw, Algorithm::mcl, Algorithm::maxmax}) {
            ClusterOptions opts;
            opts.seed = rng.next();
            Partition p = cluster(g, a, opts);
            check_partition_invariants(p, g.vertex_count());
            check_component_safety(g, p.clusters());
        }
    }
}
