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

namespace {

// Two disjoint stalker pairs that would both need the single copy of a.
Instance twin_stalkers() {
    return make_instance(4, {{0, 1}, {2, 3}}, {{"a", 1}},
                         {{0, "a", 1, 1}, {1, "a", 2, 1}, {2, "a", 1, 1}, {3, "a", 2, 1}});
}

}  // namespace

TEST_CASE("two stalker pairs sharing one activity have no Nash stable outcome") {
    CHECK_FALSE(solve_ns_components(twin_stalkers()).found());
}

TEST_CASE("example fixture as a single component") {
    const Instance ex1 = fixture(Fixture::EmptyCore);
    const SolveOutcome nash = solve_ns_components(ex1);
    REQUIRE(nash.found());
    CHECK_FALSE(find_ns_deviation(ex1, *nash.assignment).has_value());
    CHECK_FALSE(solve_core_components(ex1).found());
}

TEST_CASE("components with disjoint approved classes concatenate") {
    // Each component must bind its own class: staying all-void is unstable
    // because players 0 and 2 would engage alone.
    const Instance inst = make_instance(
        4, {{0, 1}, {2, 3}}, {{"a", 1}, {"b", 1}},
        {{0, "a", 1, 1}, {0, "a", 2, 2}, {1, "a", 2, 1},
         {2, "b", 1, 1}, {2, "b", 2, 2}, {3, "b", 2, 1}});
    const SolveOutcome outcome = solve_ns_components(inst);
    REQUIRE(outcome.found());
    REQUIRE_FALSE(outcome.assignment->is_void(0));
    REQUIRE_FALSE(outcome.assignment->is_void(2));
    CHECK(outcome.assignment->slot(0)->activity != outcome.assignment->slot(2)->activity);
}

TEST_CASE("two example copies with disjoint classes have an empty core") {
    // Components 0-1-2 and 3-4-5, each a copy of the empty-core fixture over
    // its own pair of activities.
    const Instance inst = make_instance(
        6, {{0, 1}, {1, 2}, {3, 4}, {4, 5}},
        {{"a", 1}, {"b", 1}, {"a2", 1}, {"b2", 1}},
        {{0, "b", 2, 2}, {0, "a", 3, 1},
         {1, "a", 2, 3}, {1, "b", 2, 2}, {1, "a", 3, 1},
         {2, "a", 3, 3}, {2, "b", 1, 2}, {2, "a", 2, 1},
         {3, "b2", 2, 2}, {3, "a2", 3, 1},
         {4, "a2", 2, 3}, {4, "b2", 2, 2}, {4, "a2", 3, 1},
         {5, "a2", 3, 3}, {5, "b2", 1, 2}, {5, "a2", 2, 1}});
    CHECK_FALSE(solve_core_components(inst).found());
}

TEST_CASE("single player component is core stable") {
    const Instance solo = make_instance(1, {}, {{"a", 1}}, {{0, "a", 1, 1}});
    const SolveOutcome outcome = solve_core_components(solo);
    REQUIRE(outcome.found());
    CHECK_FALSE(outcome.assignment->is_void(0));
}

TEST_CASE("component size bound is enforced") {
    const Instance wide = make_instance(8, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}},
                                        {{"a", 1}}, {});
    ComponentBound tight{4};
    CHECK_THROWS_AS(solve_ns_components(wide, tight), BoundError);
    CHECK_THROWS_AS(solve_ns_components(fixture(Fixture::Stalker, 2)), SolverError);
}

TEST_CASE("Nash component DP matches the oracle") {
    Rng rng(91);
    int found = 0, none = 0;
    for (int trial = 0; trial < 150; ++trial) {
        const Instance inst =
            random_components_instance(rng, 4, rng.uniform(1, 3), rng.uniform(1, 3), 0.35);
        const SolveOutcome dp = solve_ns_components(inst);
        const SolveOutcome oracle = oracle_find_stable(inst, Concept::Nash, OracleLimits{12, false});
        CHECK(dp.found() == oracle.found());
        if (dp.found()) {
            CHECK_FALSE(find_ns_deviation(inst, *dp.assignment).has_value());
            ++found;
        } else {
            ++none;
        }
    }
    CHECK(found > 20);
    CHECK(none > 5);
}

TEST_CASE("core component DP matches the oracle") {
    Rng rng(92);
    int found = 0, none = 0;
    for (int trial = 0; trial < 150; ++trial) {
        // Random instances rarely have an empty core; salt the pool with the
        // empty-core fixture so both verdicts get exercised.
        const Instance inst =
            trial % 5 == 0
                ? fixture(Fixture::EmptyCore)
                : random_components_instance(rng, 3, rng.uniform(1, 3), rng.uniform(1, 3), 0.35);
        const SolveOutcome dp = solve_core_components(inst);
        const SolveOutcome oracle = oracle_find_stable(inst, Concept::Core);
        CHECK(dp.found() == oracle.found());
        if (dp.found()) {
            StrongBlockLimits unbounded{.max_players = 0, .unbounded = true};
            CHECK_FALSE(find_strong_block(inst, *dp.assignment, unbounded).has_value());
            ++found;
        } else {
            ++none;
        }
    }
    CHECK(found > 20);
    CHECK(none > 5);
}
