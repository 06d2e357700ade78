#include "bithresh/verify.hpp"

#include "bithresh/errors.hpp"
#include "bithresh/kappa.hpp"
#include "bithresh/potential.hpp"
#include "bithresh/spec_io.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <queue>
#include <sstream>

namespace bithresh {

std::mt19937_64 seeded_rng(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    std::seed_seq sq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                     static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                     static_cast<std::uint32_t>(b)};
    return std::mt19937_64(sq);
}

int rand_int(std::mt19937_64& rng, int lo, int hi) {
    if (lo > hi)
        throw std::invalid_argument("rand_int: empty range");
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

void shuffle_vec(std::mt19937_64& rng, std::vector<int>& v) {
    for (int i = static_cast<int>(v.size()) - 1; i > 0; --i)
        std::swap(v[i], v[rand_int(rng, 0, i)]);
}

Graph prufer_decode(const std::vector<int>& seq, int n) {
    if (n < 1)
        throw std::invalid_argument("prufer_decode: n must be positive");
    if (static_cast<int>(seq.size()) != std::max(0, n - 2))
        throw std::invalid_argument("prufer_decode: sequence must have n-2 entries");
    if (n == 1)
        return Graph(1, {});
    for (int s : seq)
        if (s < 0 || s >= n)
            throw std::invalid_argument("prufer_decode: entry out of range");

    std::vector<int> deg(n, 1);
    for (int s : seq) ++deg[s];
    std::priority_queue<int, std::vector<int>, std::greater<int>> leaves;
    for (int v = 0; v < n; ++v)
        if (deg[v] == 1) leaves.push(v);

    std::vector<Edge> edges;
    edges.reserve(n - 1);
    for (int s : seq) {
        int leaf = leaves.top();
        leaves.pop();
        edges.push_back({leaf, s});
        if (--deg[s] == 1) leaves.push(s);
    }
    int a = leaves.top();
    leaves.pop();
    int b = leaves.top();
    edges.push_back({a, b});
    return Graph(n, std::move(edges));
}

Graph random_tree(std::mt19937_64& rng, int n) {
    if (n < 1)
        throw std::invalid_argument("random_tree: n must be positive");
    std::vector<int> seq(std::max(0, n - 2));
    for (int& s : seq) s = rand_int(rng, 0, n - 1);
    return prufer_decode(seq, n);
}

Graph random_graph(std::mt19937_64& rng, int n, int percent) {
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rand_int(rng, 0, 99) < percent) edges.push_back({u, v});
    return Graph(n, std::move(edges));
}

void for_each_labeled_tree(int n, const std::function<void(const Graph&)>& fn) {
    if (n > 8)
        throw ResourceLimitError("for_each_labeled_tree supports n <= 8 (n^(n-2) trees)");
    if (n <= 2) {
        fn(prufer_decode({}, n));
        return;
    }
    std::vector<int> seq(n - 2, 0);
    while (true) {
        fn(prufer_decode(seq, n));
        int i = n - 3;
        while (i >= 0 && seq[i] == n - 1) seq[i--] = 0;
        if (i < 0) break;
        ++seq[i];
    }
}

std::vector<Graph> all_labeled_trees(int n) {
    std::vector<Graph> out;
    for_each_labeled_tree(n, [&](const Graph& g) { out.push_back(g); });
    return out;
}

WeightedSystem thm1_instance(std::uint64_t seed, int index, int max_n) {
    auto rng = seeded_rng(seed, static_cast<std::uint64_t>(index), 1);
    const bool rational = (index % 5 == 0);
    const int cap = rational ? std::min(8, max_n) : max_n;
    const int n = rand_int(rng, 1, cap);

    std::vector<Rat> a(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int k = i; k < n; ++k) {
            Rat v = rational ? Rat(rand_int(rng, -6, 6), rand_int(rng, 2, 3))
                             : Rat(rand_int(rng, -3, 3));
            a[static_cast<std::size_t>(i) * n + k] = v;
            a[static_cast<std::size_t>(k) * n + i] = v;
        }
    std::vector<Rat> kup(n), kdown(n);
    for (int i = 0; i < n; ++i) {
        if (rational) {
            kup[i] = Rat(rand_int(rng, -12, 12), rand_int(rng, 1, 3));
            kdown[i] = Rat(rand_int(rng, -12, 12), rand_int(rng, 1, 3));
        } else {
            kup[i] = Rat(rand_int(rng, -6, 10));
            kdown[i] = Rat(rand_int(rng, -6, 10));
        }
    }
    return WeightedSystem(n, std::move(a), std::move(kup), std::move(kdown));
}

System thm2_instance(std::uint64_t seed, int index, int max_n) {
    auto rng = seeded_rng(seed, static_cast<std::uint64_t>(index), 2);
    const int n = rand_int(rng, 2, max_n);
    Graph g = random_graph(rng, n, rand_int(rng, 20, 80));

    std::vector<int> kup(n), kdown(n);
    for (int v = 0; v < n; ++v) {
        const int top = g.degree(v) + 2;
        kup[v] = rand_int(rng, 0, top);
        kdown[v] = std::clamp(kup[v] + rand_int(rng, -2, 1), 0, top);
    }
    std::vector<int> pi(n);
    std::iota(pi.begin(), pi.end(), 0);
    shuffle_vec(rng, pi);
    return System(std::move(g), std::move(kup), std::move(kdown),
                  UpdateScheme::sequential(std::move(pi)));
}

std::pair<Graph, int> lemma9_instance(std::uint64_t seed, int index, int max_n) {
    auto rng = seeded_rng(seed, static_cast<std::uint64_t>(index), 3);
    const int n = rand_int(rng, 2, max_n);
    Graph g = random_tree(rng, n);
    const int root = rand_int(rng, 0, n - 1);
    return {std::move(g), root};
}

Row gamma3_row(std::uint64_t seed, int index, int t_min, int t_max) {
    auto rng = seeded_rng(seed, static_cast<std::uint64_t>(index), 4);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        const int t = rand_int(rng, t_min, t_max);
        const int percent = rand_int(rng, 20, 80);
        Row z(t);
        for (auto& b : z) b = rand_int(rng, 0, 99) < percent ? 1 : 0;
        if (row_gamma(z) >= 3) return z;
    }
    throw InternalInconsistencyError("gamma3_row: no qualifying row after 10000 attempts");
}

System identity_seq_system(Graph g) {
    std::vector<int> pi(g.vertex_count());
    std::iota(pi.begin(), pi.end(), 0);
    return System::uniform(std::move(g), 1, 3, UpdateScheme::sequential(std::move(pi)));
}

StateCode circle_start(int n) {
    if (n < 3)
        throw std::invalid_argument("circle_start needs n >= 3");
    return StateCode{1} << (n - 2);
}

namespace {

StateCode ones_range(int first, int last) {
    // 1-based inclusive vertex range
    StateCode x = 0;
    for (int v = first; v <= last; ++v) x |= StateCode{1} << (v - 1);
    return x;
}

} // namespace

StateCode htree_start(int n) {
    if (n < 6 || (n - 2) % 4 != 0)
        throw std::invalid_argument("htree_start needs n = 4b+2, b >= 1");
    const int eta = (n - 2) / 4 + 1;
    return ones_range(n / 2 + 1, n - eta + 1);
}

StateCode ytree_start(int n) {
    if (n < 4 || (n - 1) % 3 != 0)
        throw std::invalid_argument("ytree_start needs n = 3b+1, b >= 1");
    const int eta = (n - 1) / 3 + 1;
    return ones_range(eta, 2 * eta - 2);
}

StateCode xtree_start(int n) {
    if (n < 5 || (n - 1) % 4 != 0)
        throw std::invalid_argument("xtree_start needs n = 4b+1, b >= 1");
    const int eta = (n - 1) / 4 + 1;
    return ones_range(eta, 2 * eta - 2);
}

namespace {

template <class F>
SuiteResult run_timed(const char* name, F&& body) {
    SuiteResult r;
    r.suite = name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        auto [pass, detail] = body();
        r.pass = pass;
        r.detail = std::move(detail);
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::pair<bool, std::string> fail_at(const std::string& msg) { return {false, msg}; }

} // namespace

SuiteResult verify_thm1(const VerifyOptions& opts) {
    return run_timed("thm1", [&]() -> std::pair<bool, std::string> {
        std::uint64_t max_period = 0;
        for (int i = 0; i < opts.systems; ++i) {
            WeightedSystem ws = thm1_instance(opts.seed, i, opts.max_n);
            Theorem1Report rep = check_theorem1(ws);
            if (!rep.applicable || !rep.exhaustive)
                return fail_at("instance " + std::to_string(i) + " was not checked exhaustively");
            if (!rep.pass)
                return fail_at("instance " + std::to_string(i) + " (n=" +
                               std::to_string(ws.size()) + ") has period " +
                               std::to_string(rep.max_period));
            max_period = std::max(max_period, rep.max_period);
        }
        std::ostringstream d;
        d << opts.systems << " symmetric systems (n<=" << opts.max_n
          << "), exhaustive, max synchronous period " << max_period;
        return {true, d.str()};
    });
}

SuiteResult verify_thm2(const VerifyOptions& opts) {
    return run_timed("thm2", [&]() -> std::pair<bool, std::string> {
        std::uint64_t flips = 0;
        for (int i = 0; i < opts.systems; ++i) {
            System sys = thm2_instance(opts.seed, i, opts.max_n);
            PhasePortrait p = enumerate_phase_space(sys);
            for (const auto& a : p.attractors)
                if (a.cycle.size() != 1)
                    return fail_at("instance " + std::to_string(i) + " has an attractor of length " +
                                   std::to_string(a.cycle.size()));

            const int n = sys.vertex_count();
            const StateCode full = (n == 64) ? ~StateCode{0} : (StateCode{1} << n) - 1;
            auto rng = seeded_rng(opts.seed, static_cast<std::uint64_t>(i), 99);
            std::vector<StateCode> starts = {0, full};
            for (int s = 0; s < 30; ++s) starts.push_back(rng() & full);

            for (StateCode x : starts) {
                DescentTrace tr = descent_trace(sys, sys.scheme().pi, x);
                if (!tr.reached_fixed_point)
                    return fail_at("instance " + std::to_string(i) + " trace did not settle");
                for (const auto& ev : tr.events) {
                    if (ev.delta_p > Rat(sys.delta(ev.vertex) - 2) || ev.delta_p >= Rat(0))
                        return fail_at("instance " + std::to_string(i) + " flip at vertex " +
                                       std::to_string(ev.vertex + 1) + " changed potential by " +
                                       rat_to_string(ev.delta_p));
                }
                if (sys.step(tr.final_state) != tr.final_state)
                    return fail_at("instance " + std::to_string(i) +
                                   " trace endpoint is not a fixed point");
                flips += tr.events.size();
            }
        }
        std::ostringstream d;
        d << opts.systems << " sequential systems (n<=" << opts.max_n
          << "): attractors all fixed points; " << flips << " traced flips all strictly decreasing";
        return {true, d.str()};
    });
}

SuiteResult verify_prop5(const VerifyOptions& opts) {
    return run_timed("prop5", [&]() -> std::pair<bool, std::string> {
        for (int n = opts.circle_min; n <= opts.circle_max; ++n) {
            System sys = identity_seq_system(circle_graph(n));
            OrbitResult orb = orbit_from(sys, circle_start(n));
            if (orb.transient != 0 || orb.period != static_cast<std::uint64_t>(n - 1))
                return fail_at("Circ_" + std::to_string(n) + ": transient " +
                               std::to_string(orb.transient) + ", period " +
                               std::to_string(orb.period) + " (expected 0, " +
                               std::to_string(n - 1) + ")");
        }
        std::ostringstream d;
        d << "Circ_n for n=" << opts.circle_min << ".." << opts.circle_max
          << ": single moving 1 lies on an (n-1)-cycle";
        return {true, d.str()};
    });
}

SuiteResult verify_prop6(const VerifyOptions& opts) {
    return run_timed("prop6", [&]() -> std::pair<bool, std::string> {
        const int n1 = opts.union_n1, n2 = opts.union_n2;
        SystemSpec s1{identity_seq_system(circle_graph(n1)), ThresholdForm::Uniform, std::nullopt};
        SystemSpec s2{identity_seq_system(circle_graph(n2)), ThresholdForm::Uniform, std::nullopt};

        OrbitResult o1 = orbit_from(s1.system, circle_start(n1));
        OrbitResult o2 = orbit_from(s2.system, circle_start(n2));
        if (o1.transient != 0 || o2.transient != 0)
            return fail_at("component start states are not periodic");

        SystemSpec u = make_union_spec(s1, s2, 0, 0);
        const StateCode x = circle_start(n1) | (circle_start(n2) << n1);
        OrbitResult orb = orbit_from(u.system, x);
        const std::uint64_t want = std::lcm(o1.period, o2.period);
        if (orb.transient != 0 || orb.period != want)
            return fail_at("union orbit: transient " + std::to_string(orb.transient) +
                           ", period " + std::to_string(orb.period) + " (expected 0, " +
                           std::to_string(want) + ")");
        std::ostringstream d;
        d << "Circ_" << n1 << " + Circ_" << n2 << " bridged: component cycles " << o1.period
          << " and " << o2.period << " compose to period " << orb.period;
        return {true, d.str()};
    });
}

namespace {

std::pair<bool, std::string> tree_family_orbits(const VerifyOptions& opts,
                                                Graph (*family)(int),
                                                StateCode (*start)(int),
                                                int (*family_n)(int), const char* label) {
    for (int c = opts.c_min; c <= opts.c_max; ++c) {
        const int n = family_n(c);
        System sys = identity_seq_system(family(n));
        OrbitResult orb = orbit_from(sys, start(n));
        if (orb.transient != 0 || orb.period != static_cast<std::uint64_t>(c))
            return fail_at(std::string(label) + " n=" + std::to_string(n) + ": transient " +
                           std::to_string(orb.transient) + ", period " +
                           std::to_string(orb.period) + " (expected 0, " + std::to_string(c) +
                           ")");
    }
    std::ostringstream d;
    d << label << ": cycle lengths " << opts.c_min << ".." << opts.c_max << " realized on "
      << family_n(opts.c_min) << ".." << family_n(opts.c_max) << " vertices";
    return {true, d.str()};
}

} // namespace

SuiteResult verify_htree(const VerifyOptions& opts) {
    return run_timed("htree", [&] {
        return tree_family_orbits(
            opts, &h_tree, &htree_start, [](int c) { return 4 * c - 6; }, "H-tree");
    });
}

SuiteResult verify_ytree(const VerifyOptions& opts) {
    return run_timed("ytree", [&] {
        return tree_family_orbits(
            opts, &y_tree, &ytree_start, [](int c) { return 3 * c - 2; }, "Y-tree");
    });
}

SuiteResult verify_xtree(const VerifyOptions& opts) {
    return run_timed("xtree", [&]() -> std::pair<bool, std::string> {
        System sys5 = identity_seq_system(x_tree(5));
        const StateCode a = state_from_string("01100");
        const StateCode b = state_from_string("11011");
        if (sys5.step(a) != b || sys5.step(b) != a)
            return fail_at("X_5 does not swap 01100 and 11011");
        OrbitResult orb5 = orbit_from(sys5, a);
        if (orb5.transient != 0 || orb5.period != 2)
            return fail_at("X_5 orbit is not a 2-cycle");

        auto [pass, detail] = tree_family_orbits(
            opts, &x_tree, &xtree_start, [](int c) { return 4 * c - 3; }, "X-tree");
        if (!pass) return {false, detail};
        return {true, detail + "; X_5 gives the 2-cycle"};
    });
}

SuiteResult verify_lemma9(const VerifyOptions& opts) {
    return run_timed("lemma9", [&]() -> std::pair<bool, std::string> {
        std::uint64_t states = 0, portraits = 0;
        for (int t = 0; t < opts.trees; ++t) {
            auto [g, root] = lemma9_instance(opts.seed, t, opts.tree_max_n);
            const int n = g.vertex_count();
            std::vector<int> level_pi = level_order_permutation(root_levels(g, root));
            System sys = System::kdown_deg_plus_one(g, 1, UpdateScheme::sequential(level_pi));

            const StateCode count = StateCode{1} << n;
            for (StateCode x = 0; x < count; ++x) {
                ParentCopyResult res = check_parent_copy(sys, root, x);
                if (!res.holds)
                    return fail_at("tree " + std::to_string(t) + " state " +
                                   state_to_string(x, n) + " does not copy parent states");
                ++states;
            }

            auto rng = seeded_rng(opts.seed, static_cast<std::uint64_t>(t), 7);
            std::vector<std::vector<int>> orders = {level_pi};
            for (int s = 0; s < 5; ++s) {
                std::vector<int> pi(n);
                std::iota(pi.begin(), pi.end(), 0);
                shuffle_vec(rng, pi);
                orders.push_back(std::move(pi));
            }
            for (const auto& pi : orders) {
                System s2 = System::kdown_deg_plus_one(g, 1, UpdateScheme::sequential(pi));
                PhasePortrait p = enumerate_phase_space(s2);
                for (const auto& a : p.attractors)
                    if (a.cycle.size() != 1)
                        return fail_at("tree " + std::to_string(t) +
                                       " has a periodic attractor of length " +
                                       std::to_string(a.cycle.size()));
                ++portraits;
            }
        }
        std::ostringstream d;
        d << opts.trees << " trees (n<=" << opts.tree_max_n << "): parent-copy holds on " << states
          << " states; " << portraits << " phase spaces have only fixed points";
        return {true, d.str()};
    });
}

SuiteResult verify_bands(const VerifyOptions& opts) {
    return run_timed("bands", [&]() -> std::pair<bool, std::string> {
        std::uint64_t parts_total = 0, bands_total = 0;
        for (int i = 0; i < opts.rows; ++i) {
            Row z = gamma3_row(opts.seed, i, opts.t_min, opts.t_max);
            const std::string at = " (row " + std::to_string(i) + ")";

            Partition p = build_partition(z);
            std::size_t covered = p.c0.size();
            for (const auto& part : p.parts) covered += part.indices.size();
            if (covered != support(z).size())
                return fail_at("partition does not cover the support" + at);

            TypedPartition tp = classify_types(z, p);
            if (tp.m01 != tp.m10)
                return fail_at("m01 != m10" + at);
            if (tp.m00 + tp.m01 + tp.m10 + tp.m11 != static_cast<int>(p.parts.size()))
                return fail_at("type counts do not add up" + at);

            BandLemmaResult bl = check_band_lemma(z);
            if (!bl.holds)
                return fail_at("band transition counts out of range" + at);

            auto rng = seeded_rng(opts.seed, static_cast<std::uint64_t>(i), 13);
            const int t = static_cast<int>(z.size());
            Row z2(t);
            const int percent = rand_int(rng, 20, 80);
            for (auto& bit : z2) bit = rand_int(rng, 0, 99) < percent ? 1 : 0;

            const Rat a01(rand_int(rng, -6, 6), rand_int(rng, 1, 3));
            if (l_operator(a01, z, z2) + l_operator(a01, z2, z) != Rat(0))
                return fail_at("L is not antisymmetric" + at);

            const Rat a00(rand_int(rng, -6, 6), rand_int(rng, 1, 3));
            const Rat a11(rand_int(rng, -6, 6), rand_int(rng, 1, 3));
            const std::vector<Row> rows = {z, z2};
            const std::vector<Rat> arm = {a00, a01, a01, a11};
            if (psi(arm, rows, 0, 0) != Rat(0))
                return fail_at("stride class sum is nonzero" + at);
            Rat sum(0);
            for (std::size_t k = 0; k <= p.parts.size(); ++k)
                sum += psi(arm, rows, 0, static_cast<int>(k));
            if (sum != l_operator(a00, z, z) + l_operator(a01, z, z2))
                return fail_at("part sums do not match the row L-sum" + at);

            parts_total += p.parts.size();
            bands_total += bands(z).size();
        }
        std::ostringstream d;
        d << opts.rows << " rows (T=" << opts.t_min << ".." << opts.t_max << "): " << parts_total
          << " parts and " << bands_total << " bands pass coverage, pairing, and sum identities";
        return {true, d.str()};
    });
}

SuiteResult verify_kappa(const VerifyOptions& opts) {
    return run_timed("kappa", [&]() -> std::pair<bool, std::string> {
        std::uint64_t closure_trees = 0;
        bool single = true;
        for (int n = 1; n <= opts.closure_max_n && single; ++n) {
            for_each_labeled_tree(n, [&](const Graph& g) {
                if (!single) return;
                if (kappa_classes(g).count() != 1) single = false;
                ++closure_trees;
            });
        }
        if (!single)
            return fail_at("a tree has more than one orientation class");

        std::uint64_t perm_checks = 0;
        for (int n = 2; n <= opts.perm_max_n; ++n) {
            bool ok = true;
            for_each_labeled_tree(n, [&](const Graph& g) {
                if (!ok) return;
                std::vector<int> pi(n);
                std::iota(pi.begin(), pi.end(), 0);
                System base = System::uniform(g, 1, 3, UpdateScheme::sequential(pi));
                const auto want = cycle_length_multiset(base);
                while (std::next_permutation(pi.begin(), pi.end())) {
                    System sys = System::uniform(g, 1, 3, UpdateScheme::sequential(pi));
                    if (cycle_length_multiset(sys) != want) {
                        ok = false;
                        return;
                    }
                    ++perm_checks;
                }
            });
            if (!ok)
                return fail_at("two update orders on a tree with n=" + std::to_string(n) +
                               " give different cycle-length multisets");
        }
        std::ostringstream d;
        d << closure_trees << " trees (n<=" << opts.closure_max_n
          << ") each form one orientation class; " << perm_checks
          << " reordered systems (n<=" << opts.perm_max_n << ") all cycle-equivalent";
        return {true, d.str()};
    });
}

const std::vector<std::string>& verify_suite_names() {
    static const std::vector<std::string> names = {"thm1",  "thm2",  "prop5",  "prop6", "htree",
                                                   "ytree", "xtree", "lemma9", "bands", "kappa"};
    return names;
}

SuiteResult run_suite(const std::string& name, const VerifyOptions& opts) {
    if (name == "thm1") return verify_thm1(opts);
    if (name == "thm2") return verify_thm2(opts);
    if (name == "prop5") return verify_prop5(opts);
    if (name == "prop6") return verify_prop6(opts);
    if (name == "htree") return verify_htree(opts);
    if (name == "ytree") return verify_ytree(opts);
    if (name == "xtree") return verify_xtree(opts);
    if (name == "lemma9") return verify_lemma9(opts);
    if (name == "bands") return verify_bands(opts);
    if (name == "kappa") return verify_kappa(opts);
    std::string names;
    for (const auto& s : verify_suite_names()) names += (names.empty() ? "" : ", ") + s;
    throw std::invalid_argument("unknown suite \"" + name + "\" (expected one of: " + names + ")");
}

} // namespace bithresh
