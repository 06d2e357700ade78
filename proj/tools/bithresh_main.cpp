#include "bithresh/attractors.hpp"
#include "bithresh/errors.hpp"
#include "bithresh/graph.hpp"
#include "bithresh/kappa.hpp"
#include "bithresh/potential.hpp"
#include "bithresh/proofcheck.hpp"
#include "bithresh/spec_io.hpp"
#include "bithresh/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace bithresh;

StateCode parse_state_arg(const std::string& bits, int n) {
    if (static_cast<int>(bits.size()) != n)
        throw std::invalid_argument("state \"" + bits + "\" has " + std::to_string(bits.size()) +
                                    " bits but the system has " + std::to_string(n) + " vertices");
    return state_from_string(bits);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << content;
}

struct StepArgs {
    std::string spec_path, state;
    int count = 1;
    bool weighted = false;
};

int cmd_step(const StepArgs& a) {
    SystemSpec spec = load_system_spec(a.spec_path);
    if (a.weighted && !spec.weighted)
        throw std::invalid_argument("spec has no weighted block");
    const int n = a.weighted ? spec.weighted->size() : spec.system.vertex_count();
    StateCode x = parse_state_arg(a.state, n);
    for (int i = 0; i < a.count; ++i) {
        x = a.weighted ? spec.weighted->step(x) : spec.system.step(x);
        std::cout << state_to_string(x, n) << "\n";
    }
    return 0;
}

struct OrbitArgs {
    std::string spec_path, state, trace_path, certify_path;
    bool weighted = false;
    bool json = false;
};

int cmd_orbit(const OrbitArgs& a) {
    SystemSpec spec = load_system_spec(a.spec_path);
    if (a.weighted && !spec.weighted)
        throw std::invalid_argument("spec has no weighted block");
    const int n = a.weighted ? spec.weighted->size() : spec.system.vertex_count();
    StateCode x = parse_state_arg(a.state, n);

    OrbitResult orb = a.weighted ? orbit_from(*spec.weighted, x) : orbit_from(spec.system, x);

    if (a.json) {
        nlohmann::json j;
        j["transient"] = orb.transient;
        j["period"] = orb.period;
        j["cycle"] = nlohmann::json::array();
        for (StateCode s : orb.cycle) j["cycle"].push_back(state_to_string(s, n));
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "transient=" << orb.transient << "\n";
        std::cout << "period=" << orb.period << "\n";
        std::cout << "cycle:\n";
        for (StateCode s : orb.cycle) std::cout << state_to_string(s, n) << "\n";
    }

    if (!a.trace_path.empty()) {
        if (a.weighted)
            throw std::invalid_argument("--trace applies to the graph system, not the weighted block");
        if (spec.system.scheme().mode != UpdateMode::Sequential)
            throw std::invalid_argument("--trace requires a sequential update scheme");
        DescentTrace tr = descent_trace(spec.system, spec.system.scheme().pi, x);
        write_file(a.trace_path, trace_to_csv(tr));
        std::cerr << "trace: " << tr.events.size() << " flips, "
                  << (tr.reached_fixed_point ? "settled" : "did not settle") << ", wrote "
                  << a.trace_path << "\n";
    }

    if (!a.certify_path.empty()) {
        if (!a.weighted)
            throw std::invalid_argument("--certify requires --weighted");
        PeriodicTable pt = periodic_table(*spec.weighted, x);
        CertifyReport rep = certify_orbit(*spec.weighted, pt);
        write_file(a.certify_path, certify_report_to_json(rep));
        std::cerr << "certificate for period " << rep.period << " orbit written to "
                  << a.certify_path << "\n";
    }
    return 0;
}

struct PhaseSpaceArgs {
    std::string spec_path, dot_path, csv_path;
    int cap = kDefaultEnumerationCap;
    bool weighted = false;
    bool json = false;
    bool serial = false;
};

int cmd_phase_space(const PhaseSpaceArgs& a) {
    SystemSpec spec = load_system_spec(a.spec_path);
    if (a.weighted && !spec.weighted)
        throw std::invalid_argument("spec has no weighted block");
    EnumerateOptions opts;
    opts.cap = a.cap;
    opts.parallel = !a.serial;
    PhasePortrait p = a.weighted ? enumerate_phase_space(*spec.weighted, opts)
                                 : enumerate_phase_space(spec.system, opts);

    std::size_t max_len = 0;
    for (const auto& at : p.attractors) max_len = std::max(max_len, at.cycle.size());

    if (a.json) {
        nlohmann::json j;
        j["states"] = std::uint64_t{1} << p.n;
        j["attractors"] = nlohmann::json::array();
        for (std::size_t k = 0; k < p.attractors.size(); ++k) {
            const auto& at = p.attractors[k];
            j["attractors"].push_back({{"id", k},
                                       {"length", at.cycle.size()},
                                       {"representative", state_to_string(at.cycle.front(), p.n)},
                                       {"basin_size", at.basin_size}});
        }
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "states=" << (std::uint64_t{1} << p.n) << " attractors=" << p.attractors.size()
                  << " max_cycle_length=" << max_len << "\n";
    }

    if (!a.dot_path.empty()) write_file(a.dot_path, portrait_to_dot(p));
    if (!a.csv_path.empty()) write_file(a.csv_path, portrait_to_csv(p));
    return 0;
}

struct VerifyArgs {
    std::vector<std::string> suites;
    VerifyOptions opts;
    bool json = false;
};

int cmd_verify(const VerifyArgs& a) {
    std::vector<std::string> suites = a.suites;
    if (suites.empty() || (suites.size() == 1 && suites[0] == "all"))
        suites = verify_suite_names();

    bool all_pass = true;
    nlohmann::json out = nlohmann::json::array();
    for (const auto& name : suites) {
        SuiteResult r = run_suite(name, a.opts);
        all_pass = all_pass && r.pass;
        if (a.json) {
            out.push_back({{"suite", r.suite},
                           {"pass", r.pass},
                           {"detail", r.detail},
                           {"seconds", r.seconds}});
        } else {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.2fs", r.seconds);
            std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.suite << " (" << buf << ") "
                      << r.detail << "\n";
        }
    }
    if (a.json) std::cout << out.dump(2) << "\n";
    return all_pass ? 0 : 1;
}

struct UnionArgs {
    std::string spec1_path, spec2_path, out_path;
    std::string state, state1, state2;
    int u1 = 1, u2 = 1;
};

int cmd_union(const UnionArgs& a) {
    SystemSpec s1 = load_system_spec(a.spec1_path);
    SystemSpec s2 = load_system_spec(a.spec2_path);
    const int n1 = s1.system.vertex_count();
    const int n2 = s2.system.vertex_count();
    if (a.u1 < 1 || a.u1 > n1)
        throw std::invalid_argument("--u1 must name a vertex of the first system (1.." +
                                    std::to_string(n1) + ")");
    if (a.u2 < 1 || a.u2 > n2)
        throw std::invalid_argument("--u2 must name a vertex of the second system (1.." +
                                    std::to_string(n2) + ")");

    SystemSpec u = make_union_spec(s1, s2, a.u1 - 1, a.u2 - 1);
    save_system_spec(u, a.out_path);
    const int n = u.system.vertex_count();
    std::cout << "union: n=" << n << " bridge_vertex=" << n << " wrote " << a.out_path << "\n";

    if (!a.state.empty()) {
        StateCode x = parse_state_arg(a.state, n);
        if (state_bit(x, n - 1))
            std::cerr << "warning: bridge vertex " << n
                      << " starts at 1; the composed-cycle construction assumes it stays 0\n";
        std::cout << "state=" << state_to_string(x, n) << "\n";
    } else if (!a.state1.empty() || !a.state2.empty()) {
        if (a.state1.empty() || a.state2.empty())
            throw std::invalid_argument("--state1 and --state2 must be given together");
        StateCode x1 = parse_state_arg(a.state1, n1);
        StateCode x2 = parse_state_arg(a.state2, n2);
        StateCode x = x1 | (x2 << n1);
        std::cout << "state=" << state_to_string(x, n) << "\n";
    }
    return 0;
}

struct GenerateArgs {
    std::string family, out_path;
    int n = 0;
    int kup = 1, kdown = 3;
    bool sync = false;
    bool rule = false;
};

int cmd_generate(const GenerateArgs& a) {
    Graph g = [&] {
        if (a.family == "circle") return circle_graph(a.n);
        if (a.family == "complete") return complete_graph(a.n);
        if (a.family == "htree") return h_tree(a.n);
        if (a.family == "ytree") return y_tree(a.n);
        if (a.family == "xtree") return x_tree(a.n);
        throw std::invalid_argument("unknown family \"" + a.family +
                                    "\" (circle, complete, htree, ytree, xtree)");
    }();

    UpdateScheme scheme = UpdateScheme::synchronous();
    if (!a.sync) {
        std::vector<int> pi(a.n);
        std::iota(pi.begin(), pi.end(), 0);
        scheme = UpdateScheme::sequential(std::move(pi));
    }
    SystemSpec spec{a.rule ? System::kdown_deg_plus_one(std::move(g), a.kup, std::move(scheme))
                           : System::uniform(std::move(g), a.kup, a.kdown, std::move(scheme)),
                    a.rule ? ThresholdForm::Rule : ThresholdForm::Uniform, std::nullopt};
    save_system_spec(spec, a.out_path);
    std::cout << "wrote " << a.out_path << "\n";

    if (!a.sync && !a.rule && a.kup == 1 && a.kdown == 3) {
        StateCode start = 0;
        bool have = true;
        if (a.family == "circle")
            start = circle_start(a.n);
        else if (a.family == "htree")
            start = htree_start(a.n);
        else if (a.family == "ytree")
            start = ytree_start(a.n);
        else if (a.family == "xtree")
            start = a.n == 5 ? state_from_string("01100") : xtree_start(a.n);
        else
            have = false;
        if (have) std::cout << "start=" << state_to_string(start, a.n) << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bi-threshold graph dynamical systems toolkit"};
    app.require_subcommand(1);

    StepArgs step_args;
    auto* step = app.add_subcommand("step", "apply the update map and print each state");
    step->add_option("--spec", step_args.spec_path, "system spec JSON file")->required();
    step->add_option("--state", step_args.state, "start state as bits, vertex 1 first")->required();
    step->add_option("--count", step_args.count, "number of steps")->check(CLI::PositiveNumber);
    step->add_flag("--weighted", step_args.weighted, "drive the spec's weighted block");

    OrbitArgs orbit_args;
    auto* orbit = app.add_subcommand("orbit", "transient and cycle reached from a state");
    orbit->add_option("--spec", orbit_args.spec_path, "system spec JSON file")->required();
    orbit->add_option("--state", orbit_args.state, "start state as bits")->required();
    orbit->add_flag("--weighted", orbit_args.weighted, "drive the spec's weighted block");
    orbit->add_flag("--json", orbit_args.json, "print JSON instead of text");
    orbit->add_option("--trace", orbit_args.trace_path,
                      "write a per-flip potential trace CSV (sequential systems)");
    orbit->add_option("--certify", orbit_args.certify_path,
                      "write an orbit certificate JSON (with --weighted)");

    PhaseSpaceArgs ps_args;
    auto* ps = app.add_subcommand("phase-space", "enumerate all states and attractors");
    ps->add_option("--spec", ps_args.spec_path, "system spec JSON file")->required();
    ps->add_option("--cap", ps_args.cap, "largest vertex count to enumerate");
    ps->add_option("--dot", ps_args.dot_path, "write the transition digraph as DOT");
    ps->add_option("--csv", ps_args.csv_path, "write the attractor table as CSV");
    ps->add_flag("--weighted", ps_args.weighted, "drive the spec's weighted block");
    ps->add_flag("--json", ps_args.json, "print JSON instead of text");
    ps->add_flag("--serial", ps_args.serial, "disable parallel enumeration");

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand("verify", "run built-in result suites");
    verify->add_option("suites", verify_args.suites,
                       "suites to run (default all): thm1 thm2 prop5 prop6 htree ytree xtree "
                       "lemma9 bands kappa");
    verify->add_option("--seed", verify_args.opts.seed, "seed for the randomized suites");
    verify->add_option("--systems", verify_args.opts.systems, "instances for thm1/thm2");
    verify->add_option("--max-n", verify_args.opts.max_n, "vertex cap for thm1/thm2");
    verify->add_option("--circle-min", verify_args.opts.circle_min, "smallest circle for prop5");
    verify->add_option("--circle-max", verify_args.opts.circle_max, "largest circle for prop5");
    verify->add_option("--n1", verify_args.opts.union_n1, "first circle size for prop6");
    verify->add_option("--n2", verify_args.opts.union_n2, "second circle size for prop6");
    verify->add_option("--c-min", verify_args.opts.c_min, "smallest cycle length for tree suites");
    verify->add_option("--c-max", verify_args.opts.c_max, "largest cycle length for tree suites");
    verify->add_option("--trees", verify_args.opts.trees, "tree count for lemma9");
    verify->add_option("--tree-max-n", verify_args.opts.tree_max_n, "vertex cap for lemma9");
    verify->add_option("--rows", verify_args.opts.rows, "row count for bands");
    verify->add_option("--t-min", verify_args.opts.t_min, "shortest row for bands");
    verify->add_option("--t-max", verify_args.opts.t_max, "longest row for bands");
    verify->add_option("--closure-max-n", verify_args.opts.closure_max_n,
                       "largest tree for the orientation closure");
    verify->add_option("--perm-max-n", verify_args.opts.perm_max_n,
                       "largest tree for the all-permutations check");
    verify->add_flag("--json", verify_args.json, "print JSON instead of text");

    UnionArgs union_args;
    auto* un = app.add_subcommand("union", "bridge two sequential systems through a new vertex");
    un->add_option("--spec1", union_args.spec1_path, "first system spec")->required();
    un->add_option("--spec2", union_args.spec2_path, "second system spec")->required();
    un->add_option("--u1", union_args.u1, "bridge anchor in the first system (1-based)")
        ->required();
    un->add_option("--u2", union_args.u2, "bridge anchor in the second system (1-based)")
        ->required();
    un->add_option("--out", union_args.out_path, "output spec file")->required();
    un->add_option("--state", union_args.state, "full composed state to validate and echo");
    un->add_option("--state1", union_args.state1, "first component state to compose");
    un->add_option("--state2", union_args.state2, "second component state to compose");

    GenerateArgs gen_args;
    auto* gen = app.add_subcommand("generate", "write a spec for a named graph family");
    gen->add_option("family", gen_args.family, "circle, complete, htree, ytree, or xtree")
        ->required();
    gen->add_option("--n", gen_args.n, "vertex count")->required();
    gen->add_option("--out", gen_args.out_path, "output spec file")->required();
    gen->add_option("--kup", gen_args.kup, "uniform up-threshold (default 1)");
    gen->add_option("--kdown", gen_args.kdown, "uniform down-threshold (default 3)");
    gen->add_flag("--sync", gen_args.sync, "synchronous update (default: sequential 1..n)");
    gen->add_flag("--rule", gen_args.rule, "per-vertex kdown = degree + 1 instead of --kdown");

    CLI11_PARSE(app, argc, argv);

    try {
        if (step->parsed()) return cmd_step(step_args);
        if (orbit->parsed()) return cmd_orbit(orbit_args);
        if (ps->parsed()) return cmd_phase_space(ps_args);
        if (verify->parsed()) return cmd_verify(verify_args);
        if (un->parsed()) return cmd_union(union_args);
        if (gen->parsed()) return cmd_generate(gen_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
