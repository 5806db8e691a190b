#include <doctest.h>

#include "ggasp/bench.hpp"
#include "ggasp/oracle.hpp"
#include "ggasp/reductions.hpp"
#include "ggasp/rng.hpp"
#include "ggasp/stability.hpp"
#include "ggasp/tree.hpp"
#include "support.hpp"

using namespace ggasp;
using testing::make_instance;

TEST_CASE("copyable stalker still has no Nash stable outcome") {
    const Instance stalker = fixture(Fixture::Stalker, 2);
    REQUIRE(stalker.all_copyable());
    CHECK_FALSE(solve_ns_copyable_forest(stalker).found());
}

TEST_CASE("one player with an approved activity") {
    const Instance solo = make_instance(1, {}, {{"a", 1}}, {{0, "a", 1, 1}});
    const SolveOutcome outcome = solve_ns_copyable_forest(solo);
    REQUIRE(outcome.found());
    CHECK_FALSE(outcome.assignment->is_void(0));
}

TEST_CASE("preconditions are rejected") {
    const Instance single_copy = fixture(Fixture::EmptyCore);
    CHECK_THROWS_AS(solve_ns_copyable_forest(single_copy), SolverError);
    CHECK_THROWS_AS(solve_core_copyable_forest(single_copy), SolverError);
    const Instance ring =
        make_instance(3, {{0, 1}, {1, 2}, {0, 2}}, {{"a", 3}}, {{0, "a", 1, 1}});
    CHECK_THROWS_AS(solve_ns_copyable_forest(ring), SolverError);
}

TEST_CASE("copyable stalker has a core stable outcome") {
    const Instance stalker = fixture(Fixture::Stalker, 2);
    const SolveOutcome outcome = solve_core_copyable_forest(stalker);
    REQUIRE(outcome.found());
    CHECK_FALSE(check_core_forest(stalker, *outcome.assignment).has_value());
    // Player 0 engages in a alone, the stalker stays void.
    CHECK_FALSE(outcome.assignment->is_void(0));
    CHECK(outcome.assignment->is_void(1));
}

TEST_CASE("copyable example fixture gets a core stable outcome") {
    const Instance ex1 = fixture(Fixture::EmptyCore, 3);
    const SolveOutcome outcome = solve_core_copyable_forest(ex1);
    REQUIRE(outcome.found());
    CHECK(check_individually_rational(ex1, *outcome.assignment).empty());
    CHECK_FALSE(check_core_forest(ex1, *outcome.assignment).has_value());
}

TEST_CASE("Nash DP matches the oracle on random copyable forests") {
    Rng rng(4242);
    int found = 0;
    for (int trial = 0; trial < 150; ++trial) {
        const int n = rng.uniform(1, 7);
        const Instance inst = random_forest_instance(rng, n, rng.uniform(1, 3), 0.35, n);
        const SolveOutcome dp = solve_ns_copyable_forest(inst);
        const SolveOutcome oracle = oracle_find_stable(inst, Concept::Nash);
        CHECK(dp.found() == oracle.found());
        if (dp.found()) {
            ++found;
            CHECK(check_assignment_feasible(inst, *dp.assignment));
            CHECK(check_individually_rational(inst, *dp.assignment).empty());
            CHECK_FALSE(find_ns_deviation(inst, *dp.assignment).has_value());
        }
    }
    CHECK(found > 30);  // the suite must exercise real reconstructions
}

TEST_CASE("core construction always succeeds on random copyable forests") {
    Rng rng(777);
    for (int trial = 0; trial < 120; ++trial) {
        const int n = rng.uniform(1, 7);
        const Instance inst = random_forest_instance(rng, n, rng.uniform(1, 3), 0.4, n);
        const SolveOutcome outcome = solve_core_copyable_forest(inst);
        REQUIRE(outcome.found());
        CHECK(check_assignment_feasible(inst, *outcome.assignment));
        CHECK(check_individually_rational(inst, *outcome.assignment).empty());
        CHECK_FALSE(check_core_forest(inst, *outcome.assignment).has_value());
    }
}

TEST_CASE("DP group sizes match their alternatives") {
    Rng rng(8);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = rng.uniform(2, 7);
        const Instance inst = random_forest_instance(rng, n, 2, 0.45, n);
        const SolveOutcome dp = solve_ns_copyable_forest(inst);
        if (!dp.found()) continue;
        for (const auto& [group, members] : dp.assignment->groups()) {
            for (int member : members) {
                CHECK(current_alternative(inst, *dp.assignment, member).size ==
                      static_cast<int>(members.size()));
            }
        }
    }
}

TEST_CASE("induced subinstance keeps structure and ranks") {
    const Instance ex1 = fixture(Fixture::EmptyCore);
    const Instance sub = induced_subinstance(ex1, {1, 2});
    CHECK(sub.player_count() == 2);
    CHECK(sub.edges().size() == 1);
    CHECK(sub.activity_count() == 2);
    // Player 2's (a,2) rank survives; (a,3) falls outside the new size range.
    CHECK(sub.rank(1, {0, 2}) == 1);
    CHECK(sub.rank(0, {0, 2}) == 3);
}
