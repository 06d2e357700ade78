#include "bithresh/errors.hpp"
#include "bithresh/graph.hpp"
#include "bithresh/verify.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

using namespace bithresh;

namespace {

std::vector<Edge> one_based(std::initializer_list<std::pair<int, int>> edges) {
    std::vector<Edge> out;
    for (auto [u, v] : edges) out.push_back({u - 1, v - 1});
    return out;
}

std::multiset<int> degree_multiset(const Graph& g) {
    std::multiset<int> d;
    for (int v = 0; v < g.vertex_count(); ++v) d.insert(g.degree(v));
    return d;
}

} // namespace

TEST_SUITE("graphs") {

TEST_CASE("circle and complete shapes") {
    Graph c4 = circle_graph(4);
    CHECK(c4.vertex_count() == 4);
    CHECK(c4.edge_count() == 4);
    CHECK(c4.has_edge(0, 1));
    CHECK(c4.has_edge(3, 0));
    CHECK_FALSE(c4.has_edge(0, 2));
    for (int v = 0; v < 4; ++v) CHECK(c4.degree(v) == 2);

    Graph k1 = complete_graph(1);
    CHECK(k1.vertex_count() == 1);
    CHECK(k1.edge_count() == 0);

    Graph k5 = complete_graph(5);
    CHECK(k5.edge_count() == 10);
    for (int v = 0; v < 5; ++v) CHECK(k5.degree(v) == 4);

    CHECK_THROWS_AS(circle_graph(2), std::invalid_argument);
    CHECK_THROWS_AS(complete_graph(0), std::invalid_argument);
}

TEST_CASE("graph constructor validation") {
    CHECK_THROWS_AS(Graph(3, {{0, 0}}), std::invalid_argument);       // loop
    CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), std::invalid_argument);  // duplicate
    CHECK_THROWS_AS(Graph(3, {{0, 3}}), std::invalid_argument);       // out of range
    CHECK_THROWS_AS(Graph(0, {}), std::invalid_argument);

    Graph g(4, {{2, 1}, {0, 3}});
    CHECK(g.edges() == std::vector<Edge>{{0, 3}, {1, 2}});
    CHECK(g.edge_index(3, 0) == 0);
    CHECK(g.edge_index(0, 1) == -1);
}

TEST_CASE("h-tree layout") {
    // two paths of length n/2 joined by one crossbar
    Graph h10 = h_tree(10);
    CHECK(h10.edges() == one_based({{1, 2}, {2, 3}, {3, 4}, {3, 8}, {4, 5},
                                    {6, 7}, {7, 8}, {8, 9}, {9, 10}}));
    CHECK(h10.is_tree());

    Graph h6 = h_tree(6);
    CHECK(h6.has_edge(1, 4));  // crossbar {2,5}
    CHECK(h6.edge_count() == 5);

    CHECK_THROWS_AS(h_tree(8), std::invalid_argument);   // not 4b+2
    CHECK_THROWS_AS(h_tree(2), std::invalid_argument);
}

TEST_CASE("y-tree layout") {
    Graph y7 = y_tree(7);
    CHECK(y7.edges() == one_based({{1, 2}, {2, 3}, {3, 4}, {3, 7}, {4, 5}, {6, 7}}));
    CHECK(y7.is_tree());
    CHECK(y7.degree(2) == 3);  // vertex eta = 3 is the branch point

    CHECK_THROWS_AS(y_tree(6), std::invalid_argument);
}

TEST_CASE("x-tree layout") {
    Graph x5 = x_tree(5);
    CHECK(x5.vertex_count() == 5);
    CHECK(x5.degree(1) == 4);  // vertex 2 is the center
    for (int v : {0, 2, 3, 4}) CHECK(x5.degree(v) == 1);

    Graph x9 = x_tree(9);
    CHECK(x9.degree(2) == 4);  // vertex eta = 3
    CHECK(x9.has_edge(2, 6));  // arm 3 closes back into the center
    CHECK(x9.has_edge(2, 7));  // arm 4 starts at the center
    CHECK(x9.is_tree());

    for (int n : {9, 13, 17, 29}) {
        Graph x = x_tree(n);
        CHECK(x.is_tree());
        auto d = degree_multiset(x);
        CHECK(d.count(4) == 1);
        CHECK(d.count(1) == 4);
        CHECK(static_cast<int>(d.count(2)) == n - 5);
    }

    CHECK_THROWS_AS(x_tree(7), std::invalid_argument);
}

TEST_CASE("family degree profiles scale") {
    for (int c = 3; c <= 50; ++c) {
        Graph h = h_tree(4 * c - 6);
        auto dh = degree_multiset(h);
        CHECK(dh.count(1) == 4);
        CHECK(dh.count(3) == 2);
        CHECK(h.is_tree());

        Graph y = y_tree(3 * c - 2);
        auto dy = degree_multiset(y);
        CHECK(dy.count(1) == 3);
        CHECK(dy.count(3) == 1);
        CHECK(y.is_tree());
    }
}

TEST_CASE("bridge union") {
    BridgeUnion bu = bridge_union(circle_graph(5), circle_graph(6), 0, 0);
    CHECK(bu.graph.vertex_count() == 12);
    CHECK(bu.graph.edge_count() == 5 + 6 + 2);
    CHECK(bu.bridge_vertex == 11);
    CHECK(bu.graph.degree(11) == 2);
    CHECK(bu.graph.has_edge(11, bu.map1[0]));
    CHECK(bu.graph.has_edge(11, bu.map2[0]));
    CHECK(bu.map2[0] == 5);
    // each side keeps its internal edges under the relabeling
    CHECK(bu.graph.has_edge(bu.map1[1], bu.map1[2]));
    CHECK(bu.graph.has_edge(bu.map2[1], bu.map2[2]));
    CHECK_FALSE(bu.graph.has_edge(bu.map1[0], bu.map2[0]));

    CHECK_THROWS_AS(bridge_union(circle_graph(3), circle_graph(3), 3, 0), std::invalid_argument);
}

TEST_CASE("rooted levels") {
    RootedLevels rl = root_levels(h_tree(10), 2);  // root at vertex 3
    CHECK(rl.root == 2);
    CHECK(rl.levels[0] == std::vector<int>{2});
    CHECK(rl.levels[1] == std::vector<int>{1, 3, 7});  // vertices 2, 4, 8
    CHECK(rl.depth() == 3);
    CHECK(rl.parent[2] == -1);
    CHECK(rl.parent[7] == 2);
    CHECK(rl.parent[9] == 8);

    RootedLevels ry = root_levels(y_tree(7), 2);
    CHECK(ry.levels[1] == std::vector<int>{1, 3, 6});  // vertices 2, 4, 7

    CHECK_THROWS_AS(root_levels(circle_graph(4), 0), std::invalid_argument);
    CHECK_THROWS_AS(root_levels(h_tree(6), 9), std::invalid_argument);
}

TEST_CASE("json round trip") {
    Graph g = y_tree(7);
    Graph back = graph_from_json(graph_to_json(g));
    CHECK(back == g);

    CHECK_THROWS_AS(graph_from_json("{"), std::invalid_argument);
    CHECK_THROWS_AS(graph_from_json(R"({"n": 2, "edges": [[1, 3]]})"), std::invalid_argument);
    CHECK_THROWS_AS(graph_from_json(R"({"n": 2, "edges": [[1, 1]]})"), std::invalid_argument);

    Graph two = graph_from_json(R"({"n": 2, "edges": [[2, 1]]})");
    CHECK(two.has_edge(0, 1));
}

TEST_CASE("dot output is one-based") {
    std::string dot = graph_to_dot(Graph(3, {{0, 2}}));
    CHECK(dot == "graph G {\n  1;\n  2;\n  3;\n  1 -- 3;\n}\n");
}

TEST_CASE("prufer decoding") {
    CHECK(prufer_decode({}, 2).edge_count() == 1);
    // sequence (3,3,3,3) on 6 vertices is the star at vertex 4
    Graph star = prufer_decode({3, 3, 3, 3}, 6);
    CHECK(star.degree(3) == 5);
    CHECK(star.is_tree());

    auto rng = seeded_rng(7, 0);
    for (int n = 1; n <= 40; ++n) {
        Graph t = random_tree(rng, n);
        CHECK(t.vertex_count() == n);
        CHECK(t.is_tree());
    }

    // the decode map hits every labeled tree exactly once
    std::set<std::vector<Edge>> seen;
    for_each_labeled_tree(5, [&](const Graph& g) {
        CHECK(g.is_tree());
        seen.insert(g.edges());
    });
    CHECK(seen.size() == 125);
}

} // TEST_SUITE
