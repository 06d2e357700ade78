#include "bithresh/dynamics.hpp"
#include "bithresh/errors.hpp"
#include "bithresh/graph.hpp"
#include "bithresh/state.hpp"
#include "bithresh/verify.hpp"

#include <doctest.h>

#include <numeric>

using namespace bithresh;

namespace {

System circ4_sync() {
    return System::uniform(circle_graph(4), 1, 3, UpdateScheme::synchronous());
}

System circ4_seq() {
    return System::uniform(circle_graph(4), 1, 3, UpdateScheme::sequential({0, 1, 2, 3}));
}

} // namespace

TEST_SUITE("dynamics") {

TEST_CASE("state codec") {
    CHECK(state_to_string(state_from_string("1001"), 4) == "1001");
    CHECK(state_from_string("1000") == 1);  // vertex 1 is the lowest bit
    CHECK(state_from_string("0001") == 8);
    CHECK_THROWS_AS(state_from_string("10x1"), std::invalid_argument);
    CHECK_THROWS_AS(state_from_string(""), std::invalid_argument);
    CHECK(state_to_string(0, 0) == "");
}

TEST_CASE("closed neighborhood score") {
    System sys = circ4_sync();
    StateCode x = state_from_string("1001");
    // vertex 1 sees itself, 2, and 4
    CHECK(sys.sigma(x, 0) == 2);
    CHECK(sys.sigma(x, 1) == 1);
    CHECK(sys.sigma(x, 2) == 1);
    CHECK(sys.sigma(x, 3) == 2);
}

TEST_CASE("synchronous and sequential worked example") {
    System fsync = circ4_sync();
    CHECK(state_to_string(fsync.step(state_from_string("1001")), 4) == "0110");

    System fseq = circ4_seq();
    CHECK(state_to_string(fseq.step(state_from_string("1001")), 4) == "0010");

    // (0,1,1,0,0) -> (1,1,0,1,1) on the 5-vertex star-of-arms graph
    System x5 = identity_seq_system(x_tree(5));
    CHECK(state_to_string(x5.step(state_from_string("01100")), 5) == "11011");
    CHECK(state_to_string(x5.step(state_from_string("11011")), 5) == "01100");
}

TEST_CASE("all-zero state is fixed when kup is positive") {
    for (const System& sys : {circ4_sync(), circ4_seq()}) {
        CHECK(sys.step(0) == 0);
    }
}

TEST_CASE("threshold validation") {
    CHECK_THROWS_AS(System::uniform(circle_graph(4), -1, 3, UpdateScheme::synchronous()),
                    std::invalid_argument);
    CHECK_THROWS_AS(System::uniform(circle_graph(4), 1, 5, UpdateScheme::synchronous()),
                    std::invalid_argument);  // kdown above d+2
    CHECK_NOTHROW(System::uniform(circle_graph(4), 0, 4, UpdateScheme::synchronous()));

    CHECK_THROWS_AS(System::uniform(circle_graph(4), 1, 3, UpdateScheme::sequential({0, 1, 2})),
                    std::invalid_argument);
    CHECK_THROWS_AS(System::uniform(circle_graph(4), 1, 3, UpdateScheme::sequential({0, 1, 2, 2})),
                    std::invalid_argument);

    Graph big(65, [] {
        std::vector<Edge> e;
        for (int v = 1; v < 65; ++v) e.push_back({0, v});
        return e;
    }());
    CHECK_THROWS_AS(System::uniform(std::move(big), 1, 3, UpdateScheme::synchronous()),
                    std::invalid_argument);
}

TEST_CASE("degree rule thresholds") {
    System sys = System::kdown_deg_plus_one(y_tree(7), 1, UpdateScheme::synchronous());
    CHECK(sys.kdown(2) == 4);  // branch vertex, degree 3
    CHECK(sys.kdown(0) == 2);  // leaf
    CHECK(sys.kup(4) == 1);
}

TEST_CASE("sequential differs from synchronous by fold order") {
    System fseq = circ4_seq();
    StateCode x = state_from_string("1001");
    // updating in reverse order gives a different image than 1..n
    StateCode fwd = fseq.step_sequential(x, {0, 1, 2, 3});
    StateCode rev = fseq.step_sequential(x, {3, 2, 1, 0});
    CHECK(state_to_string(fwd, 4) == "0010");
    CHECK(state_to_string(rev, 4) == "0100");
}

TEST_CASE("weighted system reduces to the graph system on A = Adj + I") {
    auto rng = seeded_rng(11, 0);
    for (int trial = 0; trial < 40; ++trial) {
        int n = rand_int(rng, 1, 10);
        Graph g = random_graph(rng, n, rand_int(rng, 20, 90));
        std::vector<int> kup(n), kdown(n);
        for (int v = 0; v < n; ++v) {
            kup[v] = rand_int(rng, 0, g.degree(v) + 2);
            kdown[v] = rand_int(rng, 0, g.degree(v) + 2);
        }
        System sys(g, kup, kdown, UpdateScheme::synchronous());
        WeightedSystem ws = WeightedSystem::from_graph(sys);
        CHECK(ws.symmetric());

        const StateCode count = StateCode{1} << n;
        for (StateCode x = 0; x < count; ++x) {
            CHECK(ws.step(x) == sys.step_synchronous(x));
        }
    }
}

TEST_CASE("zero-gap thresholds give the standard threshold function") {
    // with kup == kdown == k the image bit is sigma >= k regardless of the
    // current bit
    auto rng = seeded_rng(12, 0);
    for (int trial = 0; trial < 20; ++trial) {
        int n = rand_int(rng, 2, 8);
        Graph g = random_graph(rng, n, 50);
        std::vector<int> kup(n), kdown(n);
        for (int v = 0; v < n; ++v) kup[v] = kdown[v] = rand_int(rng, 0, g.degree(v) + 2);
        System sys(g, kup, kdown, UpdateScheme::synchronous());
        const StateCode count = StateCode{1} << n;
        for (StateCode x = 0; x < count; ++x) {
            StateCode y = sys.step(x);
            for (int v = 0; v < n; ++v) {
                CHECK(state_bit(y, v) == (sys.sigma(x, v) >= kup[v] ? 1 : 0));
            }
        }
    }
}

TEST_CASE("local functions are monotone in the score") {
    // raising sigma by turning on extra neighbors never turns the image bit off
    auto rng = seeded_rng(13, 0);
    for (int trial = 0; trial < 20; ++trial) {
        int n = rand_int(rng, 2, 8);
        Graph g = random_graph(rng, n, 60);
        std::vector<int> kup(n), kdown(n);
        for (int v = 0; v < n; ++v) {
            kup[v] = rand_int(rng, 0, g.degree(v) + 2);
            kdown[v] = rand_int(rng, 0, g.degree(v) + 2);
        }
        System sys(g, kup, kdown, UpdateScheme::synchronous());
        const StateCode count = StateCode{1} << n;
        for (StateCode x = 0; x < count; ++x) {
            for (int v = 0; v < n; ++v) {
                for (int u : g.neighbors(v)) {
                    if (state_bit(x, u)) continue;
                    StateCode higher = with_bit(x, u, 1);
                    CHECK(sys.eval_vertex(higher, v) >= sys.eval_vertex(x, v));
                }
            }
        }
    }
}

TEST_CASE("weighted asymmetric matrices need the override") {
    std::vector<Rat> a = {Rat(1), Rat(-1), Rat(1), Rat(0)};
    std::vector<Rat> kup = {Rat(0), Rat(1)};
    std::vector<Rat> kdown = {Rat(1), Rat(1)};
    CHECK_THROWS_AS(WeightedSystem(2, a, kup, kdown), std::invalid_argument);
    WeightedSystem ws(2, a, kup, kdown, true);
    CHECK_FALSE(ws.symmetric());
    CHECK(ws.row_sum(state_from_string("11"), 0) == Rat(0));
}

TEST_CASE("weighted rational thresholds compare exactly") {
    // a_ij in halves: a score of 1/2 + 1/2 reaches a threshold of exactly 1
    // but stays below 3/2
    std::vector<Rat> a = {Rat(1, 2), Rat(1, 2), Rat(1, 2), Rat(1, 2)};
    std::vector<Rat> kup = {Rat(1), Rat(3, 2)};
    std::vector<Rat> kdown = {Rat(1), Rat(3, 2)};
    WeightedSystem ws(2, a, kup, kdown);
    CHECK(ws.step(state_from_string("11")) == state_from_string("10"));
    CHECK(ws.step(state_from_string("10")) == state_from_string("00"));
}

} // TEST_SUITE
