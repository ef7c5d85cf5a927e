#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "support/generators.hpp"
#include "support/tempdir.hpp"
#include "synsets/synonymy.hpp"

using namespace synsets;

TEST_CASE("edge list: duplicate pairs keep the maximum weight") {
    SynonymyGraph g = load_edge_list_text("a\tb\t1.0\nb\ta\t2.0\n", "test");
    REQUIRE(g.graph.vertex_count() == 2);
    REQUIRE(g.graph.edge_count() == 1);
    REQUIRE(g.graph.edge_weight(*g.vocab.find("a"), *g.vocab.find("b")) == 2.0);
}

TEST_CASE("edge list: self-loop lines are dropped with a counted warning") {
    LoadStats stats;
    SynonymyGraph g = load_edge_list_text("a\ta\t1.0\n", "test", &stats);
    REQUIRE(g.graph.edge_count() == 0);
    REQUIRE(stats.self_loops_dropped == 1);
}

TEST_CASE("edge list: missing weight defaults to 1.0") {
    SynonymyGraph g = load_edge_list_text("a\tb\n", "test");
    REQUIRE(g.graph.edge_weight(0, 1) == 1.0);
}

TEST_CASE("edge list: comments, blank lines and CRLF are accepted") {
    SynonymyGraph g = load_edge_list_text("# comment\r\n\r\na\tb\t0.5\r\nc\td\t2\n", "test");
    REQUIRE(g.graph.vertex_count() == 4);
    REQUIRE(g.graph.edge_count() == 2);
}

TEST_CASE("edge list: malformed lines name the line number") {
    REQUIRE_THROWS_WITH(load_edge_list_text("a\tb\t1.0\na\tb\tc\td\n", "f"),
                        Catch::Matchers::ContainsSubstring("f:2"));
    REQUIRE_THROWS_WITH(load_edge_list_text("a\tb\tx\n", "f"),
                        Catch::Matchers::ContainsSubstring("non-numeric"));
    REQUIRE_THROWS_WITH(load_edge_list_text("a\tb\t-1\n", "f"),
                        Catch::Matchers::ContainsSubstring("positive"));
    REQUIRE_THROWS_WITH(load_edge_list_text("a\tb\t0\n", "f"),
                        Catch::Matchers::ContainsSubstring("positive"));
    REQUIRE_THROWS_WITH(load_edge_list_text("onlyoneword\n", "f"),
                        Catch::Matchers::ContainsSubstring("fields"));
}

TEST_CASE("edge list: empty file is an error") {
    REQUIRE_THROWS_WITH(load_edge_list_text("", "f"), Catch::Matchers::ContainsSubstring("empty"));
    REQUIRE_THROWS_WITH(load_edge_list_text("# nothing\n\n", "f"),
                        Catch::Matchers::ContainsSubstring("empty"));
}

TEST_CASE("edge list: words keep case and inner spaces") {
    SynonymyGraph g = load_edge_list_text("New York\tBig Apple\t1\n", "test");
    REQUIRE(g.vocab.find("New York").has_value());
    REQUIRE(g.vocab.find("new york") == std::nullopt);
}

TEST_CASE("round trip: serialize then reload preserves vertices, edges and weights") {
    SplitMix64 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        Graph raw = gen::random_weighted_graph(2 + rng.bounded(12), 0.3, rng);
        if (raw.edge_count() == 0) continue;
        SynonymyGraph g = gen::named(raw);
        std::string text = serialize_edge_list(g);
        SynonymyGraph back = load_edge_list_text(text, "roundtrip");
        REQUIRE(back.vocab.size() == [&] {
            std::set<Vertex> touched;
            g.graph.for_each_edge([&](Vertex u, Vertex v, double) {
                touched.insert(u);
                touched.insert(v);
            });
            return touched.size();
        }());
        REQUIRE(back.graph.edge_count() == g.graph.edge_count());
        bool all_match = true;
        g.graph.for_each_edge([&](Vertex u, Vertex v, double w) {
            auto bu = back.vocab.find(g.word(u));
            auto bv = back.vocab.find(g.word(v));
            if (!bu || !bv) {
                all_match = false;
                return;
            }
            // %.6g on weights drawn from [0.25, 4.25) round-trips to ~1e-6 relative
            double got = back.graph.edge_weight(*bu, *bv);
            if (std::abs(got - w) > 1e-5 * std::max(1.0, std::abs(w))) all_match = false;
        });
        REQUIRE(all_match);
    }
}

TEST_CASE("ego network: square, order 1 and order 2") {
    // square a-b-c-d-a as 0-1-2-3
    Graph g = gen::graph_of(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}});
    EgoNetwork n1 = ego_network(g, 1, 1);
    REQUIRE(n1.members == std::vector<Vertex>{0, 1, 2});
    REQUIRE(n1.subgraph.edge_count() == 2);
    REQUIRE(n1.subgraph.has_edge(n1.local_of(0), n1.local_of(1)));
    REQUIRE(n1.subgraph.has_edge(n1.local_of(1), n1.local_of(2)));
    REQUIRE_FALSE(n1.subgraph.has_edge(n1.local_of(0), n1.local_of(2)));

    EgoNetwork n2 = ego_network(g, 1, 2);
    REQUIRE(n2.members == std::vector<Vertex>{0, 1, 2, 3});
    REQUIRE(n2.subgraph.edge_count() == 4);
}

TEST_CASE("ego network: isolated vertex has no edges") {
    GraphBuilder b(3);
    b.add_edge(0, 1, 1.0);
    Graph g = std::move(b).build();
    EgoNetwork n = ego_network(g, 2, 1);
    REQUIRE(n.members == std::vector<Vertex>{2});
    REQUIRE(n.subgraph.edge_count() == 0);
}

TEST_CASE("ego network: unknown vertex is an error") {
    SynonymyGraph g = load_edge_list_text("a\tb\t1\n", "test");
    REQUIRE_THROWS_AS(ego_network(g, "zzz", 1), Error);
}

TEST_CASE("ego network properties: order-1 inside order-2, induced subgraph complete") {
    SplitMix64 rng(42);
    for (int trial = 0; trial < 30; ++trial) {
        Graph g = gen::random_unit_graph(2 + rng.bounded(14), 0.25, rng);
        for (Vertex ego = 0; ego < g.vertex_count(); ++ego) {
            EgoNetwork n1 = ego_network(g, ego, 1);
            EgoNetwork n2 = ego_network(g, ego, 2);
            REQUIRE(std::includes(n2.members.begin(), n2.members.end(), n1.members.begin(),
                                  n1.members.end()));
            // every input edge among member vertices must be present
            for (const EgoNetwork* net : {&n1, &n2}) {
                std::size_t expected = 0;
                g.for_each_edge([&](Vertex u, Vertex v, double) {
                    bool inu = std::binary_search(net->members.begin(), net->members.end(), u);
                    bool inv = std::binary_search(net->members.begin(), net->members.end(), v);
                    if (inu && inv) ++expected;
                });
                REQUIRE(net->subgraph.edge_count() == expected);
            }
        }
    }
}

TEST_CASE("graph stats") {
    SECTION("empty graph") {
        GraphStats s = graph_stats(Graph{});
        REQUIRE(s.vertices == 0);
        REQUIRE(s.edges == 0);
        REQUIRE(s.weight_sum == 0.0);
        REQUIRE(s.degree_histogram.empty());
    }
    SECTION("unit triangle") {
        GraphStats s = graph_stats(gen::graph_of(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}));
        REQUIRE(s.vertices == 3);
        REQUIRE(s.edges == 3);
        REQUIRE(s.weight_sum == 3.0);
        REQUIRE(s.degree_histogram == std::map<std::size_t, std::size_t>{{2, 3}});
    }
    SECTION("square") {
        GraphStats s = graph_stats(gen::graph_of(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}}));
        REQUIRE(s.vertices == 4);
        REQUIRE(s.edges == 4);
        REQUIRE(s.weight_sum == 4.0);
        REQUIRE(s.degree_histogram == std::map<std::size_t, std::size_t>{{2, 4}});
    }
}

TEST_CASE("file round trip through disk") {
    testutil::TempDir dir("graph");
    SynonymyGraph g = load_edge_list_text("b\ta\t1.5\nc\ta\t2\n", "test");
    save_edge_list(g, dir.file("g.tsv"));
    SynonymyGraph back = load_edge_list(dir.file("g.tsv"));
    REQUIRE(back.graph.edge_count() == 2);
    // serialization orders endpoints and lines lexicographically
    std::string text = read_file(dir.file("g.tsv"));
    REQUIRE(text == "a\tb\t1.5\na\tc\t2\n");
}
