#pragma once

#include "bithresh/dynamics.hpp"
#include "bithresh/rational.hpp"
#include "bithresh/state.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace bithresh {

struct PotentialBreakdown {
    std::vector<Rat> vertex_potentials;  // indexed by vertex
    std::vector<int> edge_potentials;    // indexed by position in graph().edges()
    Rat total{0};
};

// kdown(v) when x_v = 1, else d(v) + 2 - kup(v)
Rat vertex_potential(const System& sys, StateCode x, int v);
// 1 when the endpoints disagree
int edge_potential(StateCode x, const Edge& e);
PotentialBreakdown system_potential(const System& sys, StateCode x);

struct FlipEvent {
    std::uint64_t step = 0;  // index of the local update that flipped, counting every application
    int vertex = 0;
    int from = 0;
    int to = 0;
    Rat delta_p{0};
    Rat p_after{0};
};

struct DescentTrace {
    Rat initial_potential{0};
    std::vector<FlipEvent> events;
    StateCode final_state = 0;
    bool reached_fixed_point = false;  // a full pass applied no flip
};

// Repeatedly applies the sequential map in order pi, recording the exact
// potential change of every flip, until a whole pass leaves the state alone
// or max_passes passes have run. Each recorded change is checked against the
// per-flip bound delta(v) - 2; a violation throws InternalInconsistencyError
// because the bound holds unconditionally.
DescentTrace descent_trace(const System& sys, const std::vector<int>& pi, StateCode x,
                           std::uint64_t max_passes = 1u << 20);

// CSV with header step,vertex,from,to,delta_P,P_after (1-based vertex labels)
std::string trace_to_csv(const DescentTrace& trace);

} // namespace bithresh
