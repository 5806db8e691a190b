#include <doctest.h>

#include <set>

#include "ggasp/bench.hpp"
#include "ggasp/oracle.hpp"
#include "ggasp/reductions.hpp"
#include "ggasp/rng.hpp"
#include "ggasp/stability.hpp"
#include "support.hpp"

using namespace ggasp;
using testing::make_instance;

namespace {

long long count_feasible(const Instance& inst) {
    long long count = 0;
    enumerate_feasible_assignments(inst, [&](const Assignment&) {
        ++count;
        return true;
    });
    return count;
}

}  // namespace

TEST_CASE("feasible assignment counts") {
    CHECK(count_feasible(fixture(Fixture::Stalker)) == 4);
    CHECK(count_feasible(make_instance(1, {}, {{"a", 1}}, {})) == 2);
    // Non-empty intervals of a 3-path plus the all-void assignment.
    CHECK(count_feasible(make_instance(3, {{0, 1}, {1, 2}}, {{"a", 1}}, {})) == 7);
    // A star loses {1,2}; a triangle keeps all seven non-empty subsets.
    CHECK(count_feasible(make_instance(3, {{0, 1}, {0, 2}}, {{"a", 1}}, {})) == 7);
    CHECK(count_feasible(make_instance(3, {{0, 1}, {1, 2}, {0, 2}}, {{"a", 1}}, {})) == 8);
    // Two copies: the pair can split only where both halves stay connected.
    CHECK(count_feasible(make_instance(2, {{0, 1}}, {{"a", 2}}, {})) == 5);
}

TEST_CASE("enumeration emits feasible assignments exactly once, canonically") {
    Rng rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        const Instance inst = random_forest_instance(rng, rng.uniform(2, 6), 2, 0.4, 2);
        std::set<std::vector<int>> seen;
        enumerate_feasible_assignments(inst, [&](const Assignment& pi) {
            CHECK(check_assignment_feasible(inst, pi));
            std::vector<int> key;
            for (int i = 0; i < pi.size(); ++i) {
                const auto& slot = pi.slot(i);
                key.push_back(slot.has_value() ? slot->activity * 100 + slot->copy : -1);
            }
            CHECK(seen.insert(key).second);
            // Canonical copy use: copy j of a class appears only when copies
            // 0..j-1 are in use.
            const auto groups = pi.groups();
            for (const auto& [group, members] : groups) {
                for (int j = 0; j < group.copy; ++j) {
                    CHECK(groups.count({group.activity, j}) == 1);
                }
            }
            return true;
        });
    }
}

TEST_CASE("oracle verdicts on the fixtures") {
    const Instance ex1 = fixture(Fixture::EmptyCore);
    const Instance stalker = fixture(Fixture::Stalker);

    CHECK(oracle_count_stable(ex1, Concept::Core) == 0);
    CHECK_FALSE(oracle_find_stable(ex1, Concept::Core).found());

    CHECK(oracle_count_stable(stalker, Concept::Nash) == 0);
    CHECK_FALSE(oracle_find_stable(stalker, Concept::Nash).found());
    CHECK(oracle_count_stable(stalker, Concept::Core) == 1);

    const SolveOutcome nash = oracle_find_stable(ex1, Concept::Nash);
    REQUIRE(nash.found());
    CHECK_FALSE(find_ns_deviation(ex1, *nash.assignment).has_value());
    // Exactly (b,b,void) and (a,a,a) are Nash stable.
    CHECK(oracle_count_stable(ex1, Concept::Nash) == 2);
}

TEST_CASE("single player approving their singleton") {
    const Instance solo = make_instance(1, {}, {{"a", 1}}, {{0, "a", 1, 1}});
    CHECK(oracle_count_stable(solo, Concept::Nash) == 1);
    const SolveOutcome outcome = oracle_find_stable(solo, Concept::Nash);
    REQUIRE(outcome.found());
    CHECK_FALSE(outcome.assignment->is_void(0));
}

TEST_CASE("oracle bound is enforced and overridable") {
    const Instance big = make_instance(11, {}, {}, {});
    CHECK_THROWS_AS(oracle_count_stable(big, Concept::IR), BoundError);
    OracleLimits wider;
    wider.max_players = 12;
    CHECK(oracle_count_stable(big, Concept::IR, wider) == 1);  // no activities: all void
}

TEST_CASE("no Nash stable outcome means every IR assignment has a deviation") {
    const Instance stalker = fixture(Fixture::Stalker);
    enumerate_feasible_assignments(stalker, [&](const Assignment& pi) {
        if (check_individually_rational(stalker, pi).empty()) {
            CHECK(find_ns_deviation(stalker, pi).has_value());
        }
        return true;
    });
}

TEST_CASE("adding a fresh approved copyable class never shrinks the IR count") {
    Rng rng(17);
    for (int trial = 0; trial < 15; ++trial) {
        const int n = rng.uniform(2, 5);
        RawInstance raw;
        raw.players = n;
        for (int v = 1; v < n; ++v) {
            if (rng.chance(0.7)) raw.edges.emplace_back(v, rng.uniform(0, v - 1));
        }
        raw.activities = {{"a0", 1}};
        raw.prefs.resize(n);
        for (int i = 0; i < n; ++i) {
            for (int k = 1; k <= n; ++k) {
                if (rng.chance(0.3)) raw.prefs[i].push_back({"a0", k, rng.uniform(1, 3)});
            }
        }
        const Instance base = build_instance(raw);
        RawInstance extended = raw;
        extended.activities.push_back({"fresh", n});
        for (int i = 0; i < n; ++i) extended.prefs[i].push_back({"fresh", 1, 1});
        const Instance more = build_instance(extended);
        CHECK(oracle_count_stable(more, Concept::IR) >= oracle_count_stable(base, Concept::IR));
    }
}
