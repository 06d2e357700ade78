#pragma once

#include <string>
#include <utility>
#include <vector>

namespace bithresh {

using Edge = std::pair<int, int>;

// Undirected simple graph. Vertices are 0-based in the C++ API; every
// serialized form (JSON, DOT, printed labels) uses 1-based labels.
class Graph {
public:
    // Edges are normalized to (min, max), deduplicated rejected: loops,
    // duplicates, and out-of-range endpoints all throw std::invalid_argument.
    Graph(int n, std::vector<Edge> edges);

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    // sorted lexicographically, each with first < second
    const std::vector<Edge>& edges() const { return edges_; }

    const std::vector<int>& neighbors(int v) const;
    int degree(int v) const;
    bool has_edge(int u, int v) const;
    // position of (u,v) in edges(), or -1
    int edge_index(int u, int v) const;

    bool is_connected() const;
    bool is_tree() const;

    bool operator==(const Graph& other) const {
        return n_ == other.n_ && edges_ == other.edges_;
    }

private:
    int n_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
};

// named families
Graph circle_graph(int n);    // cycle on n >= 3 vertices
Graph complete_graph(int n);  // K_n, n >= 1
Graph h_tree(int n);          // two parallel paths joined by a crossbar; n = 4b + 2, b >= 1
Graph y_tree(int n);          // path with one pendant branch; n = 3b + 1, b >= 1
Graph x_tree(int n);          // four arms of b vertices meeting at a center; n = 4b + 1, b >= 1

struct BridgeUnion {
    Graph graph;
    std::vector<int> map1;  // old vertex -> new vertex for the first operand
    std::vector<int> map2;  // same for the second operand
    int bridge_vertex;      // the fresh degree-2 vertex joining the anchors
};

// Disjoint union of g1 and g2 plus a new vertex adjacent to u1 (in g1) and
// u2 (in g2). Anchors are 0-based.
BridgeUnion bridge_union(const Graph& g1, const Graph& g2, int u1, int u2);

struct RootedLevels {
    int root;
    std::vector<std::vector<int>> levels;  // levels[d] = vertices at depth d, ascending
    std::vector<int> parent;               // parent[v], -1 for the root
    int depth() const { return static_cast<int>(levels.size()) - 1; }
};

// BFS layering of a tree from the given root; throws if g is not a tree.
RootedLevels root_levels(const Graph& g, int root);

// {"n": ..., "edges": [[u, v], ...]} with 1-based endpoints
std::string graph_to_json(const Graph& g);
Graph graph_from_json(const std::string& text);

// graphviz "graph { ... }" listing every vertex, then every edge
std::string graph_to_dot(const Graph& g);

} // namespace bithresh
