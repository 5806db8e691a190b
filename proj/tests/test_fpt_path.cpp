#include <doctest.h>

#include "ggasp/bench.hpp"
#include "ggasp/fpt.hpp"
#include "ggasp/oracle.hpp"
#include "ggasp/reductions.hpp"
#include "ggasp/rng.hpp"
#include "ggasp/stability.hpp"
#include "support.hpp"

using namespace ggasp;
using testing::make_instance;

TEST_CASE("example fixture is a solvable path instance") {
    const Instance ex1 = fixture(Fixture::EmptyCore);
    const SolveOutcome outcome = solve_ns_path(ex1);
    REQUIRE(outcome.found());
    CHECK(check_assignment_feasible(ex1, *outcome.assignment));
    CHECK(check_individually_rational(ex1, *outcome.assignment).empty());
    CHECK_FALSE(find_ns_deviation(ex1, *outcome.assignment).has_value());
}

TEST_CASE("stalker game has no Nash stable outcome") {
    CHECK_FALSE(solve_ns_path(fixture(Fixture::Stalker)).found());
}

TEST_CASE("single player gets their favorite singleton") {
    const Instance solo =
        make_instance(1, {}, {{"a", 1}, {"b", 1}}, {{0, "a", 1, 1}, {0, "b", 1, 2}});
    const SolveOutcome outcome = solve_ns_path(solo);
    REQUIRE(outcome.found());
    REQUIRE_FALSE(outcome.assignment->is_void(0));
    CHECK(outcome.assignment->slot(0)->activity == solo.activity_index("b"));
}

TEST_CASE("all-void path when nothing is approved") {
    const Instance inst = make_instance(4, {{0, 1}, {1, 2}, {2, 3}}, {{"a", 1}}, {});
    const SolveOutcome outcome = solve_ns_path(inst);
    REQUIRE(outcome.found());
    for (int i = 0; i < 4; ++i) CHECK(outcome.assignment->is_void(i));
}

TEST_CASE("preconditions are rejected") {
    CHECK_THROWS_AS(solve_ns_path(make_instance(4, {{0, 1}, {0, 2}, {0, 3}}, {}, {})),
                    SolverError);
    CHECK_THROWS_AS(solve_ns_path(fixture(Fixture::Stalker, 2)), SolverError);
}

TEST_CASE("a single-copy activity never lands in two groups") {
    Rng rng(6);
    for (int trial = 0; trial < 60; ++trial) {
        const Instance inst = random_path_instance(rng, rng.uniform(2, 8), rng.uniform(1, 3), 0.4);
        const SolveOutcome outcome = solve_ns_path(inst);
        if (!outcome.found()) continue;
        std::vector<int> groups_per_class(inst.activity_count(), 0);
        for (const auto& [group, members] : outcome.assignment->groups()) {
            ++groups_per_class[group.activity];
        }
        for (int count : groups_per_class) CHECK(count <= 1);
    }
}

TEST_CASE("the minimal guessed activity set is fully used") {
    // All-void is unstable (player 0 wants a0 alone), so the solver must move
    // to the guess {a0} and use it; a1 exists but stays unused.
    const Instance inst =
        make_instance(2, {{0, 1}}, {{"a0", 1}, {"a1", 1}},
                      {{0, "a0", 1, 1}, {0, "a0", 2, 2}, {1, "a0", 2, 2}});
    const SolveOutcome outcome = solve_ns_path(inst);
    REQUIRE(outcome.found());
    REQUIRE_FALSE(outcome.assignment->is_void(0));
    REQUIRE_FALSE(outcome.assignment->is_void(1));
    CHECK(outcome.assignment->slot(0)->activity == inst.activity_index("a0"));
    CHECK(outcome.assignment->slot(1)->activity == inst.activity_index("a0"));
}

TEST_CASE("path DP matches the oracle on random paths") {
    Rng rng(20177);
    int found = 0, none = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const Instance inst = random_path_instance(rng, rng.uniform(1, 8), rng.uniform(1, 3), 0.3);
        const SolveOutcome dp = solve_ns_path(inst);
        const SolveOutcome oracle = oracle_find_stable(inst, Concept::Nash);
        CHECK(dp.found() == oracle.found());
        (dp.found() ? found : none)++;
    }
    CHECK(found > 20);
    CHECK(none >= 15);
}

TEST_CASE("generated rainbow path instances agree with the source verdict") {
    // Source: path v1-v2-v3 with adjacent distinctly-colored edges.
    RainbowPathSource src;
    src.vertices = 3;
    src.edge_colors = {"c1", "c2"};
    src.k = 1;
    const Instance gen = generate_from_rainbow(src, Concept::Nash);
    CHECK(gen.player_count() == 10);
    CHECK(gen.activity_count() == 2);
    CHECK(classify_topology(gen).tag == TopologyTag::Path);
    CHECK(solve_ns_path(gen).found());  // max rainbow matching is 1 >= k
}
