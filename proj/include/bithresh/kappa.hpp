#pragma once

#include "bithresh/dynamics.hpp"
#include "bithresh/graph.hpp"
#include "bithresh/state.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace bithresh {

// Edge directions over a Graph, packed one bit per edge in edges() order:
// bit 0 directs the edge from its smaller endpoint to its larger one.
struct AcyclicOrientation {
    std::uint32_t edge_mask = 0;

    bool operator==(const AcyclicOrientation& o) const { return edge_mask == o.edge_mask; }
};

inline constexpr int kMaxOrientationEdges = 20;

// orient each edge from whichever endpoint comes first in pi
AcyclicOrientation orientation_from_permutation(const Graph& g, const std::vector<int>& pi);

bool orientation_acyclic(const Graph& g, AcyclicOrientation o);
bool is_source(const Graph& g, AcyclicOrientation o, int v);
bool is_sink(const Graph& g, AcyclicOrientation o, int v);

// Reverses every edge at v. v must be a source (degree-0 vertices count,
// making the conversion a no-op); anything else throws std::invalid_argument.
AcyclicOrientation source_to_sink(const Graph& g, AcyclicOrientation o, int v);

struct KappaClasses {
    std::uint64_t orientation_count = 0;        // acyclic orientations found
    std::vector<std::uint32_t> representatives;  // minimal mask per class, ascending
    int count() const { return static_cast<int>(representatives.size()); }
};

// Partitions all acyclic orientations of g into classes connected by
// source-to-sink conversions. Needs 2^|E| enumeration, so |E| is capped.
KappaClasses kappa_classes(const Graph& g);

// true when the orientations induced by the two permutations lie in the same
// conversion class
bool kappa_equivalent(const Graph& g, const std::vector<int>& pi1, const std::vector<int>& pi2);

// deepest level first, ascending labels within each level
std::vector<int> level_order_permutation(const RootedLevels& levels);

struct ParentCopyResult {
    bool holds = false;
    StateCode image = 0;              // the sequential step under the level order
    std::vector<int> violations;      // vertices v != root with image_v != x_parent(v)
};

// For a tree system with kup = 1 and kdown(v) = d(v)+1 everywhere: applies one
// sequential pass in level order and checks that every non-root vertex copied
// its parent's previous state. Wrong threshold profile throws
// NotApplicableError; a non-tree graph throws std::invalid_argument.
ParentCopyResult check_parent_copy(const System& sys, int root, StateCode x);

// JSON list of directed pairs [[from,to], ...] with 1-based labels
std::string orientation_to_json(const Graph& g, AcyclicOrientation o);

} // namespace bithresh
