#pragma once

#include "bithresh/graph.hpp"
#include "bithresh/rational.hpp"
#include "bithresh/state.hpp"

#include <vector>

namespace bithresh {

enum class UpdateMode { Synchronous, Sequential };

struct UpdateScheme {
    UpdateMode mode = UpdateMode::Synchronous;
    std::vector<int> pi;  // 0-based update order, used only in Sequential mode

    static UpdateScheme synchronous() { return {}; }
    static UpdateScheme sequential(std::vector<int> order) {
        return {UpdateMode::Sequential, std::move(order)};
    }

    bool operator==(const UpdateScheme& o) const { return mode == o.mode && pi == o.pi; }
};

// A graph whose vertices carry an up-threshold and a down-threshold, plus an
// update scheme. A vertex in state 0 turns on when at least kup of its closed
// neighborhood (itself included) are 1; a vertex in state 1 stays on when at
// least kdown are 1. Thresholds live in [0, d(v)+2]; the values 0 and d(v)+2
// make one direction constant, which some constructions rely on.
class System {
public:
    System(Graph graph, std::vector<int> kup, std::vector<int> kdown, UpdateScheme scheme);

    // uniform thresholds on every vertex
    static System uniform(Graph graph, int kup, int kdown, UpdateScheme scheme);
    // kup uniform, kdown(v) = d(v) + 1 (the profile that copies parent states on trees)
    static System kdown_deg_plus_one(Graph graph, int kup, UpdateScheme scheme);

    const Graph& graph() const { return graph_; }
    int vertex_count() const { return graph_.vertex_count(); }
    int kup(int v) const { return kup_[static_cast<size_t>(v)]; }
    int kdown(int v) const { return kdown_[static_cast<size_t>(v)]; }
    int delta(int v) const { return kdown(v) - kup(v); }
    const UpdateScheme& scheme() const { return scheme_; }
    StateCode neighborhood_mask(int v) const { return mask_[static_cast<size_t>(v)]; }

    // number of 1s over {v} and its neighbors
    int sigma(StateCode x, int v) const;
    // next value of coordinate v when the whole system reads state x
    int eval_vertex(StateCode x, int v) const;
    // x with coordinate v replaced by eval_vertex
    StateCode local_function(StateCode x, int v) const;

    StateCode step_synchronous(StateCode x) const;
    StateCode step_sequential(StateCode x, const std::vector<int>& pi) const;
    // one application of the system map under the stored scheme
    StateCode step(StateCode x) const;

    bool operator==(const System& o) const {
        return graph_ == o.graph_ && kup_ == o.kup_ && kdown_ == o.kdown_ && scheme_ == o.scheme_;
    }

private:
    Graph graph_;
    std::vector<int> kup_, kdown_;
    UpdateScheme scheme_;
    std::vector<StateCode> mask_;  // closed-neighborhood bitmask per vertex
};

void validate_permutation(const std::vector<int>& pi, int n);

// Synchronous map over an exact-rational interaction matrix: coordinate i
// turns on when sum_j a_ij x_j >= kup_i and turns off when the sum drops
// below kdown_i. The matrix must be symmetric unless allow_asymmetric is set;
// asymmetric instances are accepted then, but symmetric() reports the truth
// so downstream checks can flag them.
class WeightedSystem {
public:
    WeightedSystem(int n, std::vector<Rat> a_row_major, std::vector<Rat> kup,
                   std::vector<Rat> kdown, bool allow_asymmetric = false);

    // A = adjacency + identity with the graph system's thresholds; reproduces
    // the graph form's synchronous step exactly
    static WeightedSystem from_graph(const System& sys);

    int size() const { return n_; }
    bool symmetric() const { return symmetric_; }
    const Rat& a(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }
    const Rat& kup(int i) const { return kup_[static_cast<size_t>(i)]; }
    const Rat& kdown(int i) const { return kdown_[static_cast<size_t>(i)]; }

    Rat row_sum(StateCode x, int i) const;  // sum_j a_ij x_j
    int eval_index(StateCode x, int i) const;
    StateCode step(StateCode x) const;

private:
    int n_;
    std::vector<Rat> a_, kup_, kdown_;
    bool symmetric_ = false;
    // integer fast path, used when every entry and threshold is an integer
    bool all_integer_ = false;
    std::vector<long long> ai_, kupi_, kdowni_;
};

} // namespace bithresh
