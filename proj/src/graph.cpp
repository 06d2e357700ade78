#include "bithresh/graph.hpp"

#include <json.hpp>

#include <algorithm>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace bithresh {

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ < 1) throw std::invalid_argument("Graph: vertex count must be positive");
    for (auto& [u, v] : edges_) {
        if (u == v) throw std::invalid_argument("Graph: self-loop at vertex " + std::to_string(u + 1));
        if (u < 0 || v < 0 || u >= n_ || v >= n_) {
            throw std::invalid_argument("Graph: edge endpoint out of range");
        }
        if (u > v) std::swap(u, v);
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
        throw std::invalid_argument("Graph: duplicate edge");
    }
    adj_.assign(static_cast<size_t>(n_), {});
    for (auto [u, v] : edges_) {
        adj_[static_cast<size_t>(u)].push_back(v);
        adj_[static_cast<size_t>(v)].push_back(u);
    }
    for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
}

const std::vector<int>& Graph::neighbors(int v) const {
    if (v < 0 || v >= n_) throw std::invalid_argument("Graph::neighbors: vertex out of range");
    return adj_[static_cast<size_t>(v)];
}

int Graph::degree(int v) const {
    return static_cast<int>(neighbors(v).size());
}

bool Graph::has_edge(int u, int v) const {
    return edge_index(u, v) >= 0;
}

int Graph::edge_index(int u, int v) const {
    if (u > v) std::swap(u, v);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), Edge{u, v});
    if (it == edges_.end() || *it != Edge{u, v}) return -1;
    return static_cast<int>(it - edges_.begin());
}

bool Graph::is_connected() const {
    std::vector<char> seen(static_cast<size_t>(n_), 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int count = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int u : adj_[static_cast<size_t>(v)]) {
            if (!seen[static_cast<size_t>(u)]) {
                seen[static_cast<size_t>(u)] = 1;
                ++count;
                q.push(u);
            }
        }
    }
    return count == n_;
}

bool Graph::is_tree() const {
    return edge_count() == n_ - 1 && is_connected();
}

namespace {

// build from 1-based pairs, converting to the internal 0-based labels
Graph from_one_based(int n, std::vector<Edge> edges) {
    for (auto& [u, v] : edges) {
        --u;
        --v;
    }
    return Graph(n, std::move(edges));
}

} // namespace

Graph circle_graph(int n) {
    if (n < 3) throw std::invalid_argument("circle_graph: need n >= 3");
    std::vector<Edge> edges;
    for (int i = 1; i < n; ++i) edges.push_back({i, i + 1});
    edges.push_back({n, 1});
    return from_one_based(n, std::move(edges));
}

Graph complete_graph(int n) {
    if (n < 1) throw std::invalid_argument("complete_graph: need n >= 1");
    std::vector<Edge> edges;
    for (int u = 1; u <= n; ++u) {
        for (int v = u + 1; v <= n; ++v) edges.push_back({u, v});
    }
    return from_one_based(n, std::move(edges));
}

Graph h_tree(int n) {
    if (n < 6 || n % 4 != 2) throw std::invalid_argument("h_tree: need n = 4b + 2 with b >= 1");
    int beta = (n - 2) / 4;
    int eta = beta + 1;
    std::vector<Edge> edges;
    for (int i = 1; i < n / 2; ++i) edges.push_back({i, i + 1});
    for (int i = n / 2 + 1; i < n; ++i) edges.push_back({i, i + 1});
    edges.push_back({eta, n - eta + 1});
    return from_one_based(n, std::move(edges));
}

Graph y_tree(int n) {
    if (n < 4 || n % 3 != 1) throw std::invalid_argument("y_tree: need n = 3b + 1 with b >= 1");
    int beta = (n - 1) / 3;
    int eta = beta + 1;
    std::vector<Edge> edges;
    for (int i = 1; i <= 2 * eta - 2; ++i) edges.push_back({i, i + 1});
    for (int i = 2 * eta; i < n; ++i) edges.push_back({i, i + 1});
    edges.push_back({eta, n});
    return from_one_based(n, std::move(edges));
}

Graph x_tree(int n) {
    if (n < 5 || n % 4 != 1) throw std::invalid_argument("x_tree: need n = 4b + 1 with b >= 1");
    int beta = (n - 1) / 4;
    int eta = beta + 1;
    std::vector<Edge> edges;
    // arm 1: path 1..beta, then into the center
    for (int i = 1; i < beta; ++i) edges.push_back({i, i + 1});
    edges.push_back({beta, eta});
    // arm 2: center into the path (eta+1)..(2*eta - 1)
    edges.push_back({eta, eta + 1});
    for (int i = eta + 1; i <= 2 * eta - 2; ++i) edges.push_back({i, i + 1});
    // arm 3: labeled tip to center, path (2*eta)..(3*eta - 2)
    for (int i = 2 * eta; i <= 3 * eta - 3; ++i) edges.push_back({i, i + 1});
    edges.push_back({3 * eta - 2, eta});
    // arm 4: labeled center to tip, path (3*eta - 1)..(4*eta - 3)
    edges.push_back({eta, 3 * eta - 1});
    for (int i = 3 * eta - 1; i <= 4 * eta - 4; ++i) edges.push_back({i, i + 1});
    return from_one_based(n, std::move(edges));
}

BridgeUnion bridge_union(const Graph& g1, const Graph& g2, int u1, int u2) {
    int n1 = g1.vertex_count();
    int n2 = g2.vertex_count();
    if (u1 < 0 || u1 >= n1) throw std::invalid_argument("bridge_union: anchor u1 out of range");
    if (u2 < 0 || u2 >= n2) throw std::invalid_argument("bridge_union: anchor u2 out of range");
    int w = n1 + n2;
    std::vector<Edge> edges = g1.edges();
    for (auto [a, b] : g2.edges()) edges.push_back({a + n1, b + n1});
    edges.push_back({u1, w});
    edges.push_back({u2 + n1, w});
    BridgeUnion out{Graph(n1 + n2 + 1, std::move(edges)), {}, {}, w};
    out.map1.resize(static_cast<size_t>(n1));
    out.map2.resize(static_cast<size_t>(n2));
    for (int v = 0; v < n1; ++v) out.map1[static_cast<size_t>(v)] = v;
    for (int v = 0; v < n2; ++v) out.map2[static_cast<size_t>(v)] = v + n1;
    return out;
}

RootedLevels root_levels(const Graph& g, int root) {
    if (root < 0 || root >= g.vertex_count()) {
        throw std::invalid_argument("root_levels: root out of range");
    }
    if (!g.is_tree()) throw std::invalid_argument("root_levels: graph is not a tree");
    RootedLevels out;
    out.root = root;
    out.parent.assign(static_cast<size_t>(g.vertex_count()), -1);
    std::vector<int> depth(static_cast<size_t>(g.vertex_count()), -1);
    depth[static_cast<size_t>(root)] = 0;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int u : g.neighbors(v)) {
            if (depth[static_cast<size_t>(u)] < 0) {
                depth[static_cast<size_t>(u)] = depth[static_cast<size_t>(v)] + 1;
                out.parent[static_cast<size_t>(u)] = v;
                q.push(u);
            }
        }
    }
    int max_depth = *std::max_element(depth.begin(), depth.end());
    out.levels.assign(static_cast<size_t>(max_depth + 1), {});
    for (int v = 0; v < g.vertex_count(); ++v) {
        out.levels[static_cast<size_t>(depth[static_cast<size_t>(v)])].push_back(v);
    }
    // BFS order already groups by depth, but make the within-level order explicit
    for (auto& level : out.levels) std::sort(level.begin(), level.end());
    return out;
}

std::string graph_to_json(const Graph& g) {
    nlohmann::json j;
    j["n"] = g.vertex_count();
    j["edges"] = nlohmann::json::array();
    for (auto [u, v] : g.edges()) j["edges"].push_back({u + 1, v + 1});
    return j.dump();
}

Graph graph_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("graph_from_json: parse error: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("edges")) {
        throw std::invalid_argument("graph_from_json: expected object with \"n\" and \"edges\"");
    }
    if (!j["n"].is_number_integer()) throw std::invalid_argument("graph_from_json: \"n\" must be an integer");
    int n = j["n"].get<int>();
    std::vector<Edge> edges;
    for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
            throw std::invalid_argument("graph_from_json: each edge must be a pair of integers");
        }
        edges.push_back({e[0].get<int>() - 1, e[1].get<int>() - 1});
    }
    return Graph(n, std::move(edges));
}

std::string graph_to_dot(const Graph& g) {
    std::ostringstream os;
    os << "graph G {\n";
    for (int v = 1; v <= g.vertex_count(); ++v) os << "  " << v << ";\n";
    for (auto [u, v] : g.edges()) os << "  " << u + 1 << " -- " << v + 1 << ";\n";
    os << "}\n";
    return os.str();
}

} // namespace bithresh
