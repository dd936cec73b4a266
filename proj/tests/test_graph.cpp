#include <doctest.h>

#include <algorithm>
#include <stdexcept>

#include "builders.hpp"
#include "swarmres/graph.hpp"

using namespace swarmres;

TEST_SUITE_BEGIN("graph");

TEST_CASE("edge keys normalize endpoint order") {
    EdgeKey a(3, 1), b(1, 3);
    CHECK(a == b);
    CHECK(a.a == 1);
    CHECK(a.b == 3);
    CHECK(EdgeKey(1, 2) < EdgeKey(1, 3));
    CHECK(EdgeKey(2, 0) < EdgeKey(1, 9));  // (0,2) after normalization
}

TEST_CASE("node and edge bookkeeping") {
    Graph g;
    g.add_node(5);
    g.add_node(2);
    g.add_node(9);
    CHECK(g.node_count() == 3);
    CHECK(g.nodes() == std::vector<NodeId>{5, 2, 9});  // insertion order
    CHECK(g.index_of(9) == 2);
    CHECK_THROWS_AS((void)g.index_of(7), std::exception);

    g.add_edge(9, 2);
    g.add_edge(5, 9, 120.0);
    CHECK(g.edge_count() == 2);
    CHECK(g.has_edge(2, 9));
    CHECK(g.has_edge(9, 2));
    CHECK(!g.has_edge(2, 5));
    CHECK(g.degree(9) == 2);
    CHECK(g.neighbors(9) == std::vector<NodeId>{2, 5});  // ascending
    CHECK(g.edge_length(5, 9) == 120.0);
    CHECK(!g.edge_length(2, 9).has_value());

    auto edges = g.edges();
    REQUIRE(edges.size() == 2);
    CHECK(edges[0] == EdgeKey(2, 9));
    CHECK(edges[1] == EdgeKey(5, 9));

    g.remove_edge(2, 9);
    CHECK(!g.has_edge(9, 2));
    g.remove_node(9);
    CHECK(g.node_count() == 2);
    CHECK(g.edge_count() == 0);
    CHECK(g.degree(5) == 0);
}

TEST_CASE("removing a node drops every incident edge") {
    Graph g = builders::star_graph(6);
    CHECK(g.edge_count() == 6);
    g.remove_node(0);
    CHECK(g.edge_count() == 0);
    for (NodeId v = 1; v <= 6; ++v) CHECK(g.degree(v) == 0);
}

TEST_CASE("connectivity and components") {
    Graph g = builders::path_graph(4);
    CHECK(g.connected());
    g.add_node(10);
    g.add_node(11);
    g.add_edge(10, 11);
    CHECK(!g.connected());
    auto comps = g.components();
    REQUIRE(comps.size() == 2);
    CHECK(comps[0] == std::vector<NodeId>{0, 1, 2, 3});
    CHECK(comps[1] == std::vector<NodeId>{10, 11});
    CHECK(g.largest_component() == std::vector<NodeId>{0, 1, 2, 3});

    Graph empty;
    CHECK(empty.connected());  // vacuously, like the single-node graph
}

TEST_CASE("induced subgraph keeps node order and lengths") {
    Graph g = builders::cycle_graph(5);
    g.set_edge_length(1, 2, 7.5);
    std::vector<NodeId> keep{3, 1, 2};
    Graph h = g.induced(keep);
    CHECK(h.nodes() == std::vector<NodeId>{1, 2, 3});  // order follows g.nodes()
    CHECK(h.has_edge(1, 2));
    CHECK(h.has_edge(2, 3));
    CHECK(!h.has_edge(1, 3));
    CHECK(h.edge_length(1, 2) == 7.5);
}

TEST_CASE("bridges") {
    CHECK(builders::cycle_graph(5).bridges().empty());

    auto path_bridges = builders::path_graph(4).bridges();
    CHECK(path_bridges.size() == 3);

    // two triangles joined by one edge: only the joint is a bridge
    Graph g;
    for (NodeId v = 0; v < 6; ++v) g.add_node(v);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(0, 2);
    g.add_edge(3, 4);
    g.add_edge(4, 5);
    g.add_edge(3, 5);
    g.add_edge(2, 3);
    auto bs = g.bridges();
    REQUIRE(bs.size() == 1);
    CHECK(bs[0] == EdgeKey(2, 3));
}

TEST_CASE("edge list round trip") {
    RngStream rng(77);
    for (int rep = 0; rep < 20; ++rep) {
        Graph g = builders::random_graph(2 + rng.below(12), 0.3, rng);
        if (rep % 2 == 0) builders::randomize_lengths(g, rng, 1.0, 999.0);
        const std::string text = g.to_edge_list();
        Graph back = Graph::from_edge_list(text);
        CHECK(back.node_count() == g.node_count());
        CHECK(back.edges() == g.edges());
        CHECK(back.to_edge_list() == text);
        for (const EdgeKey& e : g.edges())
            CHECK(back.edge_length(e.a, e.b) == g.edge_length(e.a, e.b));
    }
}

TEST_CASE("edge list keeps isolated nodes") {
    Graph g;
    g.add_node(4);
    g.add_node(1);
    g.add_node(2);
    g.add_edge(1, 2);
    Graph back = Graph::from_edge_list(g.to_edge_list());
    CHECK(back.has_node(4));
    CHECK(back.node_count() == 3);
    CHECK(back.nodes() == std::vector<NodeId>{1, 2, 4});  // parser canonical order
}

TEST_CASE("duplicate or self edges are rejected") {
    Graph g = builders::path_graph(3);
    CHECK_THROWS_AS(g.add_edge(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(7, 0), std::invalid_argument);
}

TEST_SUITE_END();
