#include <bithresh/attractors.hpp>
#include <bithresh/dynamics.hpp>
#include <bithresh/graph.hpp>
#include <bithresh/kappa.hpp>
#include <bithresh/spec_io.hpp>
#include <bithresh/state.hpp>
#include <bithresh/verify.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

using namespace bithresh;

namespace {

using Outcome = std::pair<bool, std::string>;

// the 200 symmetric integer-weighted instances behind criteria 2 and 10
WeightedSystem integer_symmetric_instance(std::uint64_t seed, int index) {
    auto rng = seeded_rng(seed, static_cast<std::uint64_t>(index), 21);
    int n = rand_int(rng, 2, 12);
    std::vector<Rat> a(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            Rat v(rand_int(rng, -3, 3));
            a[static_cast<size_t>(i) * n + j] = v;
            a[static_cast<size_t>(j) * n + i] = v;
        }
    }
    std::vector<Rat> kup(n), kdown(n);
    for (int i = 0; i < n; ++i) {
        kup[i] = Rat(rand_int(rng, -6, 10));
        kdown[i] = Rat(rand_int(rng, -6, 10));
    }
    return WeightedSystem(n, std::move(a), std::move(kup), std::move(kdown));
}

Outcome from_suite(const SuiteResult& r) {
    return {r.pass, r.detail};
}

Outcome all_suites(std::initializer_list<const char*> names) {
    VerifyOptions opts;
    std::string detail;
    for (const char* name : names) {
        SuiteResult r = run_suite(name, opts);
        if (!r.pass) return {false, std::string(name) + ": " + r.detail};
        if (!detail.empty()) detail += "; ";
        detail += r.detail;
    }
    return {true, detail};
}

Outcome criterion1() {
    System sync = System::uniform(circle_graph(4), 1, 3, UpdateScheme::synchronous());
    System seq = identity_seq_system(circle_graph(4));
    StateCode x = state_from_string("1001");
    if (sync.step(x) != state_from_string("0110"))
        return {false, "synchronous image of 1001 is not 0110"};
    if (seq.step(x) != state_from_string("0010"))
        return {false, "sequential image of 1001 is not 0010"};

    PhasePortrait ps = enumerate_phase_space(sync);
    std::uint64_t max_sync = 0;
    for (const auto& a : ps.attractors) max_sync = std::max<std::uint64_t>(max_sync, a.cycle.size());
    if (max_sync != 2) return {false, "max synchronous attractor length is " + std::to_string(max_sync)};

    PhasePortrait pq = enumerate_phase_space(seq);
    bool has3 = false;
    for (const auto& a : pq.attractors) has3 = has3 || a.cycle.size() == 3;
    if (!has3) return {false, "no sequential attractor of length 3"};
    return {true, "images, synchronous max length 2, sequential 3-cycle"};
}

Outcome criterion2() {
    std::uint64_t max_period = 0;
    for (int i = 0; i < 200; ++i) {
        WeightedSystem ws = integer_symmetric_instance(kDefaultSeed, i);
        Theorem1Report rep = check_theorem1(ws);
        if (!rep.exhaustive)
            return {false, "instance " + std::to_string(i) + " was not enumerated exhaustively"};
        if (!rep.pass)
            return {false, "instance " + std::to_string(i) + " reaches period " +
                               std::to_string(rep.max_period)};
        max_period = std::max(max_period, rep.max_period);
    }
    return {true, "200 symmetric integer systems exhausted, max period " +
                      std::to_string(max_period)};
}

struct OracleScan {
    std::uint64_t systems = 0;
    std::uint64_t states = 0;
    std::string failure;

    template <typename Sys>
    bool scan(const Sys& sys, int n) {
        PhasePortrait p = enumerate_phase_space(sys);
        const StateCode count = StateCode{1} << n;
        for (StateCode x = 0; x < count; ++x) {
            OrbitResult r = orbit_from(sys, x);
            const auto& cyc = p.attractors[p.attractor_of[x]].cycle;
            if (r.transient != p.transient_of[x] || r.period != cyc.size()) {
                std::ostringstream os;
                os << "state " << state_to_string(x, n) << ": walk says (" << r.transient << ","
                   << r.period << "), portrait says (" << p.transient_of[x] << "," << cyc.size()
                   << ")";
                failure = os.str();
                return false;
            }
            ++states;
        }
        ++systems;
        return true;
    }
};

Outcome criterion10() {
    OracleScan scan;

    System sync = System::uniform(circle_graph(4), 1, 3, UpdateScheme::synchronous());
    if (!scan.scan(sync, 4)) return {false, scan.failure};
    if (!scan.scan(identity_seq_system(circle_graph(4)), 4)) return {false, scan.failure};

    for (int i = 0; i < 200; ++i) {
        WeightedSystem ws = integer_symmetric_instance(kDefaultSeed, i);
        if (!scan.scan(ws, ws.size())) return {false, scan.failure};
    }

    for (int i = 0; i < 200; ++i) {
        System sys = thm2_instance(kDefaultSeed, i, 12);
        if (!scan.scan(sys, sys.vertex_count())) return {false, scan.failure};
    }

    for (int n = 4; n <= 12; ++n) {
        if (!scan.scan(identity_seq_system(circle_graph(n)), n)) return {false, scan.failure};
    }

    {
        SystemSpec s1{identity_seq_system(circle_graph(5)), ThresholdForm::Uniform, std::nullopt};
        SystemSpec s2{identity_seq_system(circle_graph(6)), ThresholdForm::Uniform, std::nullopt};
        SystemSpec u = make_union_spec(s1, s2, 0, 0);
        if (!scan.scan(u.system, u.system.vertex_count())) return {false, scan.failure};
    }

    for (int n : {6, 10}) {
        if (!scan.scan(identity_seq_system(h_tree(n)), n)) return {false, scan.failure};
    }
    for (int n : {7, 10}) {
        if (!scan.scan(identity_seq_system(y_tree(n)), n)) return {false, scan.failure};
    }
    for (int n : {5, 9}) {
        if (!scan.scan(identity_seq_system(x_tree(n)), n)) return {false, scan.failure};
    }

    for (int t = 0; t < 50; ++t) {
        auto [g, root] = lemma9_instance(kDefaultSeed, t, 10);
        const int n = g.vertex_count();
        std::vector<int> level_pi = level_order_permutation(root_levels(g, root));
        auto rng = seeded_rng(kDefaultSeed, static_cast<std::uint64_t>(t), 7);
        std::vector<std::vector<int>> orders = {level_pi};
        for (int s = 0; s < 5; ++s) {
            std::vector<int> pi(n);
            std::iota(pi.begin(), pi.end(), 0);
            shuffle_vec(rng, pi);
            orders.push_back(std::move(pi));
        }
        for (const auto& pi : orders) {
            System sys = System::kdown_deg_plus_one(g, 1, UpdateScheme::sequential(pi));
            if (!scan.scan(sys, n)) return {false, scan.failure};
        }
    }

    std::ostringstream os;
    os << "walk and portrait agree on " << scan.states << " states across " << scan.systems
       << " systems";
    return {true, os.str()};
}

struct Criterion {
    int id;
    const char* label;
    double budget;  // seconds, 0 = unbounded
    std::function<Outcome()> body;
};

}  // namespace

int main() {
    std::vector<Criterion> criteria = {
        {1, "example reproduction", 1.0, criterion1},
        {2, "synchronous period bound", 60.0, criterion2},
        {3, "descent to fixed points", 60.0, [] { return from_suite(run_suite("thm2", {})); }},
        {4, "circle bifurcation witness", 5.0, [] { return from_suite(run_suite("prop5", {})); }},
        {5, "bridged union lcm orbit", 5.0, [] { return from_suite(run_suite("prop6", {})); }},
        {6, "tree families", 10.0, [] { return all_suites({"htree", "ytree", "xtree"}); }},
        {7, "parent copy on trees", 30.0, [] { return from_suite(run_suite("lemma9", {})); }},
        {8, "row partition machinery", 30.0, [] { return from_suite(run_suite("bands", {})); }},
        {9, "orientation classes", 120.0, [] { return from_suite(run_suite("kappa", {})); }},
        {10, "oracle equivalence", 0.0, criterion10},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.body();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool in_budget = c.budget == 0.0 || secs < c.budget;
        bool pass = out.first && in_budget;
        std::string note = out.second;
        if (out.first && !in_budget) {
            std::ostringstream os;
            os << "over the " << c.budget << "s budget";
            note = os.str();
        }
        std::printf("[%s] criterion %2d %-26s %7.2fs  %s\n", pass ? "PASS" : "FAIL", c.id, c.label,
                    secs, note.c_str());
        std::fflush(stdout);
        if (!pass) ++failures;
    }

    if (failures == 0) {
        std::printf("all 10 criteria passed\n");
        return 0;
    }
    std::printf("%d criteria failed\n", failures);
    return 1;
}
