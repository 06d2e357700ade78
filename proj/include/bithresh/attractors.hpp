#pragma once

#include "bithresh/dynamics.hpp"
#include "bithresh/state.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bithresh {

inline constexpr int kDefaultEnumerationCap = 24;
// beyond this the successor table alone would outgrow desk-class memory
inline constexpr int kHardEnumerationCap = 26;

struct OrbitResult {
    std::uint64_t transient = 0;           // minimal s with F^{s+T}(x) = F^s(x)
    std::uint64_t period = 1;              // minimal T
    std::vector<StateCode> cycle;          // the T states starting at F^s(x)
};

struct Attractor {
    std::vector<StateCode> cycle;          // starts at the minimal state code
    std::uint64_t basin_size = 0;          // states draining here, cycle included
};

struct PhasePortrait {
    int n = 0;
    std::vector<std::uint32_t> successor;     // indexed by state
    std::vector<Attractor> attractors;        // increasing representative order
    std::vector<std::uint32_t> transient_of;  // per-state steps to reach its cycle
    std::vector<std::uint32_t> attractor_of;  // per-state attractor index

    StateCode representative(size_t k) const { return attractors[k].cycle.front(); }
};

struct PeriodicTable {
    std::uint64_t transient = 0;
    int period = 1;
    std::vector<StateCode> columns;               // column l is F^{s+l}(x)
    std::vector<std::vector<std::uint8_t>> rows;  // rows[v][l] = bit v of column l
    std::vector<int> gamma;                       // minimal per-row period, divides T
};

struct EnumerateOptions {
    int cap = kDefaultEnumerationCap;
    bool parallel = true;
};

// Successor tables for every state 0..2^n-1. The parallel kernel and the
// serial reference must produce identical tables; both are kept so the test
// suite and the benchmark can compare them.
std::vector<std::uint32_t> successor_table(const System& sys, bool parallel = true);
std::vector<std::uint32_t> successor_table_serial(const System& sys);
std::vector<std::uint32_t> successor_table(const WeightedSystem& ws, bool parallel = true);
std::vector<std::uint32_t> successor_table_serial(const WeightedSystem& ws);

// Attractor decomposition of a successor table by in-degree peeling.
PhasePortrait portrait_from_successors(int n, std::vector<std::uint32_t> successor);

PhasePortrait enumerate_phase_space(const System& sys, const EnumerateOptions& opts = {});
PhasePortrait enumerate_phase_space(const WeightedSystem& ws, const EnumerateOptions& opts = {});

// sorted attractor lengths (a multiset)
std::vector<std::uint64_t> cycle_length_multiset(const System& sys,
                                                 const EnumerateOptions& opts = {});

// Minimal transient and period from a single start state. Uses a dense
// first-visit table for small n and a teleporting probe with O(1) state
// storage plus a recovery pass for large n.
OrbitResult orbit_from(const System& sys, StateCode x);
OrbitResult orbit_from(const WeightedSystem& ws, StateCode x);

// the probe variant, exposed so tests can cross-check it against the table
OrbitResult orbit_brent(const System& sys, StateCode x);
OrbitResult orbit_brent(const WeightedSystem& ws, StateCode x);

// The orbit's periodic part laid out as an n-row by T-column binary matrix,
// with each row's minimal period.
PeriodicTable periodic_table(const System& sys, StateCode x);
PeriodicTable periodic_table(const WeightedSystem& ws, StateCode x);

struct Theorem1Report {
    bool applicable = false;     // matrix is symmetric
    bool exhaustive = false;     // all states checked (vs. sampled)
    std::uint64_t states_checked = 0;
    std::uint64_t max_period = 0;
    bool pass = false;           // applicable and every orbit has period <= 2
    std::optional<StateCode> witness;  // a state whose period exceeds 2, if any
};

// Checks that every synchronous orbit of ws has period at most 2, exhaustively
// for n <= exhaustive_cap and by random sampling above; an asymmetric matrix
// is reported as not applicable rather than rejected.
Theorem1Report check_theorem1(const WeightedSystem& ws,
                              int exhaustive_cap = kDefaultEnumerationCap,
                              std::uint64_t samples = 1024, std::uint64_t seed = 1);

// equal cycle-length multisets (isomorphic periodic parts)
bool cycle_equivalent(const System& a, const System& b, const EnumerateOptions& opts = {});

// full phase space as a DOT digraph, states printed as "b1...bn"
std::string portrait_to_dot(const PhasePortrait& p);
// CSV with header attractor_id,length,representative,basin_size
std::string portrait_to_csv(const PhasePortrait& p);

} // namespace bithresh
