#include "bithresh/attractors.hpp"

#include "bithresh/errors.hpp"
#include "bithresh/proofcheck.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace bithresh {

namespace {

template <class StepFn>
std::vector<std::uint32_t> fill_table(int n, const StepFn& step, bool parallel) {
    const std::int64_t count = std::int64_t{1} << n;
    std::vector<std::uint32_t> succ(static_cast<size_t>(count));
    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (std::int64_t x = 0; x < count; ++x) {
            succ[static_cast<size_t>(x)] =
                static_cast<std::uint32_t>(step(static_cast<StateCode>(x)));
        }
    } else {
        for (std::int64_t x = 0; x < count; ++x) {
            succ[static_cast<size_t>(x)] =
                static_cast<std::uint32_t>(step(static_cast<StateCode>(x)));
        }
    }
    return succ;
}

int check_cap(int n, int cap, const char* what) {
    int effective = std::min(cap, kHardEnumerationCap);
    if (n > effective) {
        throw ResourceLimitError(std::string(what) + ": n = " + std::to_string(n) +
                                 " exceeds the enumeration cap " + std::to_string(effective));
    }
    return effective;
}

// first-visit table; only for n small enough that 2^n time stamps are cheap
template <class StepFn>
OrbitResult orbit_dense(int n, const StepFn& step, StateCode x) {
    constexpr std::uint32_t unset = 0xFFFFFFFFu;
    std::vector<std::uint32_t> first_seen(size_t{1} << n, unset);
    StateCode cur = x;
    std::uint32_t t = 0;
    while (first_seen[cur] == unset) {
        first_seen[cur] = t++;
        cur = step(cur);
    }
    OrbitResult out;
    out.transient = first_seen[cur];
    out.period = t - first_seen[cur];
    StateCode y = x;
    for (std::uint64_t i = 0; i < out.transient; ++i) y = step(y);
    out.cycle.reserve(out.period);
    for (std::uint64_t i = 0; i < out.period; ++i) {
        out.cycle.push_back(y);
        y = step(y);
    }
    return out;
}

// teleporting probe: O(1) stored states, then a recovery pass for minimal s
template <class StepFn>
OrbitResult orbit_probe(const StepFn& step, StateCode x) {
    std::uint64_t power = 1, lam = 1;
    StateCode tortoise = x;
    StateCode hare = step(x);
    while (tortoise != hare) {
        if (power == lam) {
            tortoise = hare;
            power *= 2;
            lam = 0;
        }
        hare = step(hare);
        ++lam;
    }
    StateCode ahead = x;
    for (std::uint64_t i = 0; i < lam; ++i) ahead = step(ahead);
    StateCode entry = x;
    std::uint64_t mu = 0;
    while (entry != ahead) {
        entry = step(entry);
        ahead = step(ahead);
        ++mu;
    }
    OrbitResult out;
    out.transient = mu;
    out.period = lam;
    out.cycle.reserve(lam);
    StateCode y = entry;
    for (std::uint64_t i = 0; i < lam; ++i) {
        out.cycle.push_back(y);
        y = step(y);
    }
    return out;
}

template <class StepFn>
OrbitResult orbit_dispatch(int n, const StepFn& step, StateCode x) {
    if (n <= 20) return orbit_dense(n, step, x);
    return orbit_probe(step, x);
}

template <class StepFn>
PeriodicTable table_from_orbit(int n, const StepFn& step, StateCode x) {
    OrbitResult orbit = orbit_dispatch(n, step, x);
    PeriodicTable t;
    t.transient = orbit.transient;
    t.period = static_cast<int>(orbit.period);
    t.columns = std::move(orbit.cycle);
    t.rows.assign(static_cast<size_t>(n), std::vector<std::uint8_t>(t.columns.size()));
    for (size_t l = 0; l < t.columns.size(); ++l) {
        for (int v = 0; v < n; ++v) {
            t.rows[static_cast<size_t>(v)][l] =
                static_cast<std::uint8_t>(state_bit(t.columns[l], v));
        }
    }
    t.gamma.reserve(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) t.gamma.push_back(row_gamma(t.rows[static_cast<size_t>(v)]));
    return t;
}

} // namespace

std::vector<std::uint32_t> successor_table(const System& sys, bool parallel) {
    return fill_table(sys.vertex_count(), [&sys](StateCode x) { return sys.step(x); }, parallel);
}

std::vector<std::uint32_t> successor_table_serial(const System& sys) {
    return successor_table(sys, false);
}

std::vector<std::uint32_t> successor_table(const WeightedSystem& ws, bool parallel) {
    return fill_table(ws.size(), [&ws](StateCode x) { return ws.step(x); }, parallel);
}

std::vector<std::uint32_t> successor_table_serial(const WeightedSystem& ws) {
    return successor_table(ws, false);
}

PhasePortrait portrait_from_successors(int n, std::vector<std::uint32_t> successor) {
    const size_t count = size_t{1} << n;
    if (successor.size() != count) {
        throw std::invalid_argument("portrait_from_successors: table size does not match n");
    }
    PhasePortrait p;
    p.n = n;
    p.successor = std::move(successor);
    constexpr std::uint32_t unset = 0xFFFFFFFFu;

    // peel states of in-degree 0 until only the periodic core remains
    std::vector<std::uint32_t> indeg(count, 0);
    for (size_t x = 0; x < count; ++x) ++indeg[p.successor[x]];
    std::vector<std::uint32_t> peel;
    peel.reserve(count);
    for (size_t x = 0; x < count; ++x) {
        if (indeg[x] == 0) peel.push_back(static_cast<std::uint32_t>(x));
    }
    for (size_t i = 0; i < peel.size(); ++i) {
        std::uint32_t y = p.successor[peel[i]];
        if (--indeg[y] == 0) peel.push_back(y);
    }

    p.transient_of.assign(count, 0);
    p.attractor_of.assign(count, unset);
    // ascending scan touches each cycle at its minimal state first, which makes
    // that state the representative and orders attractors deterministically
    for (size_t x = 0; x < count; ++x) {
        if (indeg[x] == 0 || p.attractor_of[x] != unset) continue;
        Attractor a;
        std::uint32_t idx = static_cast<std::uint32_t>(p.attractors.size());
        std::uint32_t y = static_cast<std::uint32_t>(x);
        do {
            p.attractor_of[y] = idx;
            a.cycle.push_back(y);
            y = p.successor[y];
        } while (y != static_cast<std::uint32_t>(x));
        p.attractors.push_back(std::move(a));
    }
    // reverse peel order guarantees each successor is resolved first
    for (size_t i = peel.size(); i-- > 0;) {
        std::uint32_t x = peel[i];
        std::uint32_t y = p.successor[x];
        p.transient_of[x] = p.transient_of[y] + 1;
        p.attractor_of[x] = p.attractor_of[y];
    }
    for (size_t x = 0; x < count; ++x) ++p.attractors[p.attractor_of[x]].basin_size;
    return p;
}

PhasePortrait enumerate_phase_space(const System& sys, const EnumerateOptions& opts) {
    check_cap(sys.vertex_count(), opts.cap, "enumerate_phase_space");
    return portrait_from_successors(sys.vertex_count(), successor_table(sys, opts.parallel));
}

PhasePortrait enumerate_phase_space(const WeightedSystem& ws, const EnumerateOptions& opts) {
    check_cap(ws.size(), opts.cap, "enumerate_phase_space");
    return portrait_from_successors(ws.size(), successor_table(ws, opts.parallel));
}

std::vector<std::uint64_t> cycle_length_multiset(const System& sys,
                                                 const EnumerateOptions& opts) {
    PhasePortrait p = enumerate_phase_space(sys, opts);
    std::vector<std::uint64_t> lengths;
    lengths.reserve(p.attractors.size());
    for (const auto& a : p.attractors) lengths.push_back(a.cycle.size());
    std::sort(lengths.begin(), lengths.end());
    return lengths;
}

OrbitResult orbit_from(const System& sys, StateCode x) {
    return orbit_dispatch(sys.vertex_count(), [&sys](StateCode s) { return sys.step(s); }, x);
}

OrbitResult orbit_from(const WeightedSystem& ws, StateCode x) {
    return orbit_dispatch(ws.size(), [&ws](StateCode s) { return ws.step(s); }, x);
}

OrbitResult orbit_brent(const System& sys, StateCode x) {
    return orbit_probe([&sys](StateCode s) { return sys.step(s); }, x);
}

OrbitResult orbit_brent(const WeightedSystem& ws, StateCode x) {
    return orbit_probe([&ws](StateCode s) { return ws.step(s); }, x);
}

PeriodicTable periodic_table(const System& sys, StateCode x) {
    return table_from_orbit(sys.vertex_count(), [&sys](StateCode s) { return sys.step(s); }, x);
}

PeriodicTable periodic_table(const WeightedSystem& ws, StateCode x) {
    return table_from_orbit(ws.size(), [&ws](StateCode s) { return ws.step(s); }, x);
}

Theorem1Report check_theorem1(const WeightedSystem& ws, int exhaustive_cap,
                              std::uint64_t samples, std::uint64_t seed) {
    Theorem1Report report;
    report.applicable = ws.symmetric();
    int n = ws.size();
    if (n <= std::min(exhaustive_cap, kHardEnumerationCap)) {
        report.exhaustive = true;
        report.states_checked = std::uint64_t{1} << n;
        PhasePortrait p = enumerate_phase_space(ws, {exhaustive_cap, true});
        for (const auto& a : p.attractors) {
            std::uint64_t len = a.cycle.size();
            if (len > report.max_period) {
                report.max_period = len;
                if (len > 2) report.witness = a.cycle.front();
            }
        }
    } else {
        report.exhaustive = false;
        std::mt19937_64 rng(seed);
        StateCode mask = (n == 64) ? ~StateCode{0} : ((StateCode{1} << n) - 1);
        for (std::uint64_t i = 0; i < samples; ++i) {
            StateCode x = rng() & mask;
            OrbitResult orbit = orbit_brent(ws, x);
            ++report.states_checked;
            if (orbit.period > report.max_period) {
                report.max_period = orbit.period;
                if (orbit.period > 2) report.witness = orbit.cycle.front();
            }
        }
    }
    report.pass = report.applicable && report.max_period <= 2;
    return report;
}

bool cycle_equivalent(const System& a, const System& b, const EnumerateOptions& opts) {
    if (a.vertex_count() != b.vertex_count()) {
        throw std::invalid_argument("cycle_equivalent: systems must share a vertex count");
    }
    return cycle_length_multiset(a, opts) == cycle_length_multiset(b, opts);
}

std::string portrait_to_dot(const PhasePortrait& p) {
    std::ostringstream os;
    os << "digraph phase_space {\n";
    const size_t count = size_t{1} << p.n;
    for (size_t x = 0; x < count; ++x)
        os << "  \"" << state_to_string(x, p.n) << "\";\n";
    for (size_t x = 0; x < count; ++x) {
        os << "  \"" << state_to_string(x, p.n) << "\" -> \""
           << state_to_string(p.successor[x], p.n) << "\";\n";
    }
    os << "}\n";
    return os.str();
}

std::string portrait_to_csv(const PhasePortrait& p) {
    std::ostringstream os;
    os << "attractor_id,length,representative,basin_size\n";
    for (size_t k = 0; k < p.attractors.size(); ++k) {
        const auto& a = p.attractors[k];
        os << k << "," << a.cycle.size() << "," << state_to_string(a.cycle.front(), p.n) << ","
           << a.basin_size << "\n";
    }
    return os.str();
}

} // namespace bithresh
