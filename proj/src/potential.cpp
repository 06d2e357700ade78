#include "bithresh/potential.hpp"

#include "bithresh/errors.hpp"

#include <sstream>
#include <stdexcept>

namespace bithresh {

Rat vertex_potential(const System& sys, StateCode x, int v) {
    if (v < 0 || v >= sys.vertex_count()) {
        throw std::invalid_argument("vertex_potential: vertex out of range");
    }
    if (state_bit(x, v)) return Rat(sys.kdown(v));
    return Rat(sys.graph().degree(v) + 2 - sys.kup(v));
}

int edge_potential(StateCode x, const Edge& e) {
    return state_bit(x, e.first) != state_bit(x, e.second);
}

PotentialBreakdown system_potential(const System& sys, StateCode x) {
    PotentialBreakdown out;
    out.vertex_potentials.reserve(static_cast<size_t>(sys.vertex_count()));
    for (int v = 0; v < sys.vertex_count(); ++v) {
        out.vertex_potentials.push_back(vertex_potential(sys, x, v));
        out.total += out.vertex_potentials.back();
    }
    out.edge_potentials.reserve(sys.graph().edges().size());
    for (const Edge& e : sys.graph().edges()) {
        out.edge_potentials.push_back(edge_potential(x, e));
        out.total += Rat(out.edge_potentials.back());
    }
    return out;
}

namespace {

// potential change of flipping v to `to`: only v's own term and its incident
// edges move, everything else cancels
Rat flip_delta(const System& sys, StateCode x, int v, int to) {
    Rat d = (to ? Rat(sys.kdown(v)) : Rat(sys.graph().degree(v) + 2 - sys.kup(v))) -
            (state_bit(x, v) ? Rat(sys.kdown(v)) : Rat(sys.graph().degree(v) + 2 - sys.kup(v)));
    for (int u : sys.graph().neighbors(v)) {
        d += Rat((to != state_bit(x, u)) - (state_bit(x, v) != state_bit(x, u)));
    }
    return d;
}

} // namespace

DescentTrace descent_trace(const System& sys, const std::vector<int>& pi, StateCode x,
                           std::uint64_t max_passes) {
    validate_permutation(pi, sys.vertex_count());
    DescentTrace trace;
    Rat p = system_potential(sys, x).total;
    trace.initial_potential = p;
    StateCode cur = x;
    std::uint64_t step = 0;
    for (std::uint64_t pass = 0; pass < max_passes; ++pass) {
        bool flipped = false;
        for (int v : pi) {
            int from = state_bit(cur, v);
            int to = sys.eval_vertex(cur, v);
            if (to != from) {
                Rat dp = flip_delta(sys, cur, v, to);
                if (dp > Rat(sys.delta(v) - 2)) {
                    throw InternalInconsistencyError(
                        "descent_trace: flip at vertex " + std::to_string(v + 1) +
                        " changed the potential by " + rat_to_string(dp) +
                        ", above the bound " + std::to_string(sys.delta(v) - 2));
                }
                cur = with_bit(cur, v, to);
                p += dp;
                trace.events.push_back({step, v, from, to, dp, p});
                flipped = true;
            }
            ++step;
        }
        if (!flipped) {
            trace.reached_fixed_point = true;
            break;
        }
    }
    trace.final_state = cur;
    return trace;
}

std::string trace_to_csv(const DescentTrace& trace) {
    std::ostringstream os;
    os << "step,vertex,from,to,delta_P,P_after\n";
    for (const FlipEvent& e : trace.events) {
        os << e.step << "," << e.vertex + 1 << "," << e.from << "," << e.to << ","
           << rat_to_string(e.delta_p) << "," << rat_to_string(e.p_after) << "\n";
    }
    return os.str();
}

} // namespace bithresh
