#include "bithresh/kappa.hpp"

#include "bithresh/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace bithresh {

namespace {

// endpoint pair of edge e under orientation o, as (from, to)
Edge directed(const Graph& g, AcyclicOrientation o, int e) {
    auto [u, v] = g.edges()[static_cast<size_t>(e)];
    if ((o.edge_mask >> e) & 1u) return {v, u};
    return {u, v};
}

void check_edge_budget(const Graph& g, const char* what) {
    if (g.edge_count() > kMaxOrientationEdges) {
        throw ResourceLimitError(std::string(what) + ": graph has " +
                                 std::to_string(g.edge_count()) +
                                 " edges, above the orientation-enumeration cap " +
                                 std::to_string(kMaxOrientationEdges));
    }
}

// Per-graph scratch for scanning many orientations of one graph. With bit e
// of an orientation mask flipping edge e, a vertex is a source exactly when
// its incident bits match a fixed pattern, so source/sink tests and whole
// conversions are single mask operations.
struct OrientKit {
    int n;
    std::vector<std::uint32_t> incident;  // bits of edges at v
    std::vector<std::uint32_t> away;      // incident bits whose mask value 1 points away from v
    std::vector<int> inc_start;           // per-vertex offsets into the flat lists below
    std::vector<int> inc_edge;            // edge index
    std::vector<int> inc_other;           // neighbor across that edge
    std::vector<char> inc_away;           // mask value meaning "away from v" on that edge
    mutable std::vector<int> indeg, stack;

    explicit OrientKit(const Graph& g)
        : n(g.vertex_count()), incident(static_cast<size_t>(n), 0),
          away(static_cast<size_t>(n), 0), inc_start(static_cast<size_t>(n) + 1, 0),
          indeg(static_cast<size_t>(n)), stack(static_cast<size_t>(n)) {
        for (int e = 0; e < g.edge_count(); ++e) {
            auto [u, v] = g.edges()[static_cast<size_t>(e)];
            incident[static_cast<size_t>(u)] |= 1u << e;
            incident[static_cast<size_t>(v)] |= 1u << e;
            away[static_cast<size_t>(v)] |= 1u << e;  // mask bit 1 reverses e to v -> u
        }
        for (int v = 0; v < n; ++v)
            inc_start[static_cast<size_t>(v) + 1] = inc_start[static_cast<size_t>(v)] + g.degree(v);
        inc_edge.resize(static_cast<size_t>(inc_start[static_cast<size_t>(n)]));
        inc_other.resize(inc_edge.size());
        inc_away.resize(inc_edge.size());
        std::vector<int> fill(inc_start.begin(), inc_start.end() - 1);
        for (int e = 0; e < g.edge_count(); ++e) {
            auto [u, v] = g.edges()[static_cast<size_t>(e)];
            auto& fu = fill[static_cast<size_t>(u)];
            inc_edge[static_cast<size_t>(fu)] = e;
            inc_other[static_cast<size_t>(fu)] = v;
            inc_away[static_cast<size_t>(fu++)] = 0;
            auto& fv = fill[static_cast<size_t>(v)];
            inc_edge[static_cast<size_t>(fv)] = e;
            inc_other[static_cast<size_t>(fv)] = u;
            inc_away[static_cast<size_t>(fv++)] = 1;
        }
    }

    bool source(std::uint32_t mask, int v) const {
        return (mask & incident[static_cast<size_t>(v)]) == away[static_cast<size_t>(v)];
    }
    bool sink(std::uint32_t mask, int v) const {
        const std::uint32_t inc = incident[static_cast<size_t>(v)];
        return (mask & inc) == (inc ^ away[static_cast<size_t>(v)]);
    }
    std::uint32_t convert(std::uint32_t mask, int v) const {
        return mask ^ incident[static_cast<size_t>(v)];
    }

    bool acyclic(std::uint32_t mask) const {
        // an incident bit differing from its away pattern points toward v
        for (int v = 0; v < n; ++v)
            indeg[static_cast<size_t>(v)] = std::popcount(
                (mask ^ away[static_cast<size_t>(v)]) & incident[static_cast<size_t>(v)]);
        int top = 0, seen = 0;
        for (int v = 0; v < n; ++v)
            if (indeg[static_cast<size_t>(v)] == 0) stack[static_cast<size_t>(top++)] = v;
        while (top > 0) {
            const int v = stack[static_cast<size_t>(--top)];
            ++seen;
            for (int i = inc_start[static_cast<size_t>(v)];
                 i < inc_start[static_cast<size_t>(v) + 1]; ++i) {
                if (((mask >> inc_edge[static_cast<size_t>(i)]) & 1u) !=
                    static_cast<std::uint32_t>(inc_away[static_cast<size_t>(i)]))
                    continue;  // points toward v
                const int u = inc_other[static_cast<size_t>(i)];
                if (--indeg[static_cast<size_t>(u)] == 0) stack[static_cast<size_t>(top++)] = u;
            }
        }
        return seen == n;
    }
};

// every orientation reachable from start by converting a source (forward) or
// a sink (the inverse move); both directions make this the equivalence class
std::vector<char> reach_class(const Graph& g, const OrientKit& kit, std::uint32_t start) {
    size_t masks = size_t{1} << g.edge_count();
    std::vector<char> seen(masks, 0);
    std::vector<std::uint32_t> queue{start};
    seen[start] = 1;
    while (!queue.empty()) {
        const std::uint32_t cur = queue.back();
        queue.pop_back();
        for (int v = 0; v < kit.n; ++v) {
            if (kit.incident[static_cast<size_t>(v)] == 0) continue;
            if (!kit.source(cur, v) && !kit.sink(cur, v)) continue;
            const std::uint32_t next = kit.convert(cur, v);
            if (!kit.acyclic(next)) {
                throw InternalInconsistencyError("conversion produced a directed cycle");
            }
            if (!seen[next]) {
                seen[next] = 1;
                queue.push_back(next);
            }
        }
    }
    return seen;
}

} // namespace

AcyclicOrientation orientation_from_permutation(const Graph& g, const std::vector<int>& pi) {
    validate_permutation(pi, g.vertex_count());
    if (g.edge_count() > 32) {
        throw ResourceLimitError("orientation_from_permutation: more than 32 edges");
    }
    std::vector<int> pos(static_cast<size_t>(g.vertex_count()));
    for (size_t k = 0; k < pi.size(); ++k) pos[static_cast<size_t>(pi[k])] = static_cast<int>(k);
    AcyclicOrientation o;
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.edges()[static_cast<size_t>(e)];
        if (pos[static_cast<size_t>(u)] > pos[static_cast<size_t>(v)]) o.edge_mask |= 1u << e;
    }
    return o;
}

bool orientation_acyclic(const Graph& g, AcyclicOrientation o) {
    int n = g.vertex_count();
    std::vector<int> indeg(static_cast<size_t>(n), 0);
    std::vector<std::vector<int>> out(static_cast<size_t>(n));
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [from, to] = directed(g, o, e);
        out[static_cast<size_t>(from)].push_back(to);
        ++indeg[static_cast<size_t>(to)];
    }
    std::vector<int> stack;
    for (int v = 0; v < n; ++v) {
        if (indeg[static_cast<size_t>(v)] == 0) stack.push_back(v);
    }
    int seen = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        ++seen;
        for (int u : out[static_cast<size_t>(v)]) {
            if (--indeg[static_cast<size_t>(u)] == 0) stack.push_back(u);
        }
    }
    return seen == n;
}

bool is_source(const Graph& g, AcyclicOrientation o, int v) {
    for (int u : g.neighbors(v)) {
        if (directed(g, o, g.edge_index(v, u)).second == v) return false;
    }
    return true;
}

bool is_sink(const Graph& g, AcyclicOrientation o, int v) {
    for (int u : g.neighbors(v)) {
        if (directed(g, o, g.edge_index(v, u)).first == v) return false;
    }
    return true;
}

AcyclicOrientation source_to_sink(const Graph& g, AcyclicOrientation o, int v) {
    if (v < 0 || v >= g.vertex_count()) {
        throw std::invalid_argument("source_to_sink: vertex out of range");
    }
    if (!is_source(g, o, v)) {
        throw std::invalid_argument("source_to_sink: vertex " + std::to_string(v + 1) +
                                    " is not a source");
    }
    AcyclicOrientation next = o;
    for (int u : g.neighbors(v)) next.edge_mask ^= 1u << g.edge_index(v, u);
    return next;
}

KappaClasses kappa_classes(const Graph& g) {
    check_edge_budget(g, "kappa_classes");
    const OrientKit kit(g);
    size_t masks = size_t{1} << g.edge_count();
    std::vector<char> visited(masks, 0);
    KappaClasses out;
    for (std::uint32_t mask = 0; mask < masks; ++mask) {
        if (!kit.acyclic(mask)) continue;
        ++out.orientation_count;
        if (visited[mask]) continue;
        // ascending scan: the first unvisited mask is its class minimum
        out.representatives.push_back(mask);
        std::vector<char> cls = reach_class(g, kit, mask);
        for (size_t m = 0; m < masks; ++m) {
            if (cls[m]) visited[m] = 1;
        }
    }
    return out;
}

bool kappa_equivalent(const Graph& g, const std::vector<int>& pi1, const std::vector<int>& pi2) {
    check_edge_budget(g, "kappa_equivalent");
    AcyclicOrientation o1 = orientation_from_permutation(g, pi1);
    AcyclicOrientation o2 = orientation_from_permutation(g, pi2);
    if (o1 == o2) return true;
    std::vector<char> cls = reach_class(g, OrientKit(g), o1.edge_mask);
    return cls[o2.edge_mask] != 0;
}

std::vector<int> level_order_permutation(const RootedLevels& levels) {
    std::vector<int> pi;
    for (size_t d = levels.levels.size(); d-- > 0;) {
        for (int v : levels.levels[d]) pi.push_back(v);
    }
    return pi;
}

ParentCopyResult check_parent_copy(const System& sys, int root, StateCode x) {
    const Graph& g = sys.graph();
    if (!g.is_tree()) throw std::invalid_argument("check_parent_copy: graph is not a tree");
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (sys.kup(v) != 1 || sys.kdown(v) != g.degree(v) + 1) {
            throw NotApplicableError("check_parent_copy: requires kup = 1 and kdown = d(v)+1 "
                                     "at every vertex");
        }
    }
    RootedLevels levels = root_levels(g, root);
    ParentCopyResult out;
    out.image = sys.step_sequential(x, level_order_permutation(levels));
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (v == root) continue;
        int parent = levels.parent[static_cast<size_t>(v)];
        if (state_bit(out.image, v) != state_bit(x, parent)) out.violations.push_back(v);
    }
    out.holds = out.violations.empty();
    return out;
}

std::string orientation_to_json(const Graph& g, AcyclicOrientation o) {
    nlohmann::json j = nlohmann::json::array();
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [from, to] = directed(g, o, e);
        j.push_back({from + 1, to + 1});
    }
    return j.dump();
}

} // namespace bithresh
