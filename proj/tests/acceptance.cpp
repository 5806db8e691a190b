// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <set>
#include <vector>

#include "ggasp/bench.hpp"
#include "ggasp/fpt.hpp"
#include "ggasp/io.hpp"
#include "ggasp/oracle.hpp"
#include "ggasp/reductions.hpp"
#include "ggasp/rng.hpp"
#include "ggasp/solve.hpp"
#include "ggasp/stability.hpp"
#include "ggasp/tree.hpp"

using namespace ggasp;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& what) {
    std::cout << "criterion " << criterion << (pass ? " PASS" : " FAIL") << " — " << what
              << std::endl;
    if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double median(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    const size_t mid = xs.size() / 2;
    return xs.size() % 2 == 1 ? xs[mid] : 0.5 * (xs[mid - 1] + xs[mid]);
}

// Random properly colored path source; colors introduce themselves in order.
RainbowPathSource random_rainbow(Rng& rng, int edges) {
    RainbowPathSource src;
    src.vertices = edges + 1;
    int colors = 0;
    for (int e = 0; e < edges; ++e) {
        std::string pick;
        do {
            pick = "k" + std::to_string(rng.uniform(0, colors));
        } while (e > 0 && pick == src.edge_colors.back());
        if (pick == "k" + std::to_string(colors)) ++colors;
        src.edge_colors.push_back(pick);
    }
    src.k = rng.uniform(1, colors);
    return src;
}

// Random (3,B2) formula over |X|=3, |C|=4: a random permutation of the twelve
// occurrence slots. Mostly satisfiable; clauses that repeat a variable can
// make the odd draw unsatisfiable, which callers filter out.
Sat3B2Source random_formula(Rng& rng) {
    std::vector<int> slots = {1, 1, -1, -1, 2, 2, -2, -2, 3, 3, -3, -3};
    for (int i = static_cast<int>(slots.size()) - 1; i > 0; --i) {
        std::swap(slots[i], slots[rng.uniform(0, i)]);
    }
    Sat3B2Source src;
    src.variables = 3;
    for (int c = 0; c < 4; ++c) {
        src.clauses.push_back({slots[3 * c], slots[3 * c + 1], slots[3 * c + 2]});
    }
    return src;
}

// Random path instance with a two-player tail gadget that admits no Nash
// stable outcome (the tail's head engages alone in the tail class, its
// neighbor then wants in, so the head flees). Forces a full decision sweep.
Instance unsolvable_path_instance(Rng& rng, int n, int p, double q) {
    RawInstance raw;
    raw.players = n;
    for (int v = 0; v + 1 < n; ++v) raw.edges.emplace_back(v, v + 1);
    for (int a = 0; a < p; ++a) raw.activities.push_back({"a" + std::to_string(a), 1});
    raw.activities.push_back({"tail", 1});
    raw.prefs.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i + 2 < n; ++i) {
        for (int a = 0; a < p; ++a) {
            const std::vector<std::pair<int, int>> buckets = {{1, 1}, {2, half}, {half + 1, n}};
            for (auto [lo, hi] : buckets) {
                if (lo > n) continue;
                if (!rng.chance(q)) continue;
                const int rank = rng.uniform(1, 3);
                for (int size = lo; size <= std::min(hi, n); ++size) {
                    raw.prefs[i].push_back({"a" + std::to_string(a), size, rank});
                }
            }
        }
    }
    raw.prefs[n - 2].push_back({"tail", 1, 1});
    raw.prefs[n - 1].push_back({"tail", 2, 1});
    return build_instance(raw);
}

void criterion_1() {
    const auto start = std::chrono::steady_clock::now();
    const bool core_empty = oracle_count_stable(fixture(Fixture::EmptyCore), Concept::Core) == 0;
    const bool nash_empty = oracle_count_stable(fixture(Fixture::Stalker), Concept::Nash) == 0;
    const double elapsed = seconds_since(start);
    report(1, core_empty && nash_empty && elapsed < 1.0,
           "fixture exactness: empty-core/stalker counts are zero in " + std::to_string(elapsed) +
               "s");
}

void criterion_2() {
    bool ok = !solve_ns_copyable_forest(fixture(Fixture::Stalker, 2)).found();
    Rng rng(20240001);
    int found = 0, clean = 0;
    const int total = 200;
    for (int trial = 0; trial < total; ++trial) {
        const int n = rng.uniform(1, 7);
        const Instance inst =
            random_forest_instance(rng, n, rng.uniform(1, 3), 0.35, n);
        const SolveOutcome outcome = solve_core_copyable_forest(inst);
        if (!outcome.found()) continue;
        ++found;
        if (check_assignment_feasible(inst, *outcome.assignment) &&
            check_individually_rational(inst, *outcome.assignment).empty() &&
            !check_core_forest(inst, *outcome.assignment).has_value()) {
            ++clean;
        }
    }
    ok = ok && found == total && clean == total;
    report(2, ok,
           "copyable forests: stalker stays unsolvable, core construction " +
               std::to_string(clean) + "/" + std::to_string(total) + " found and certified");
}

struct StarCase {
    Instance inst;
    bool solver_found;
};

std::vector<StarCase> star_pool;

void criterion_3() {
    Rng rng(20240003);
    const int per_family = 500;
    int path_agree = 0, star_agree = 0, comp_agree = 0;
    for (int trial = 0; trial < per_family; ++trial) {
        const Instance inst = random_path_instance(rng, rng.uniform(1, 8), rng.uniform(1, 3), 0.3);
        const SolveOutcome dp = solve_ns_path(inst);
        if (dp.found() == oracle_find_stable(inst, Concept::Nash).found()) ++path_agree;
    }
    for (int trial = 0; trial < per_family; ++trial) {
        const Instance inst = random_star_instance(rng, rng.uniform(1, 8), rng.uniform(1, 3), 0.3);
        const SolveOutcome solver = solve_ns_star(inst);
        if (solver.found() == oracle_find_stable(inst, Concept::Nash).found()) ++star_agree;
        star_pool.push_back({inst, solver.found()});
    }
    for (int trial = 0; trial < per_family; ++trial) {
        const Instance inst =
            random_components_instance(rng, 4, rng.uniform(1, 3), rng.uniform(1, 3), 0.3);
        const SolveOutcome dp = solve_ns_components(inst);
        if (dp.found() == oracle_find_stable(inst, Concept::Nash, OracleLimits{12, false}).found()) {
            ++comp_agree;
        }
    }
    const bool ok =
        path_agree == per_family && star_agree == per_family && comp_agree == per_family;
    report(3, ok,
           "oracle agreement (nash): paths " + std::to_string(path_agree) + "/500, stars " +
               std::to_string(star_agree) + "/500, components " + std::to_string(comp_agree) +
               "/500");
}

void criterion_4() {
    Rng rng(20240004);
    int comp_agree = 0;
    const int comp_total = 500;
    for (int trial = 0; trial < comp_total; ++trial) {
        const Instance inst =
            random_components_instance(rng, 3, rng.uniform(1, 3), rng.uniform(1, 3), 0.3);
        const SolveOutcome dp = solve_core_components(inst);
        if (dp.found() == oracle_find_stable(inst, Concept::Core).found()) ++comp_agree;
    }
    int forests = 0;
    bool forest_ok = true;
    const int forest_total = 200;
    for (int trial = 0; trial < forest_total; ++trial) {
        const Instance inst =
            random_forest_instance(rng, rng.uniform(1, 7), rng.uniform(1, 3), 0.35, 1);
        enumerate_feasible_assignments(inst, [&](const Assignment& pi) {
            if (!check_individually_rational(inst, pi).empty()) return true;
            if (check_core_forest(inst, pi).has_value() !=
                find_strong_block(inst, pi).has_value()) {
                forest_ok = false;
            }
            return true;
        });
        ++forests;
    }
    report(4, comp_agree == comp_total && forest_ok && forests == forest_total,
           "oracle agreement (core): components " + std::to_string(comp_agree) +
               "/500, forest check vs exhaustive blocking on 200 forests " +
               (forest_ok ? "clean" : "divergent"));
}

void criterion_5() {
    Rng rng(20240005);
    int rainbow_nash = 0, rainbow_core = 0, rainbow_core_total = 0;
    const int rainbow_total = 200;
    for (int trial = 0; trial < rainbow_total; ++trial) {
        const RainbowPathSource src = random_rainbow(rng, rng.uniform(1, 6));
        ReductionSource wrapped;
        wrapped.kind = ReductionSource::Kind::RainbowPath;
        wrapped.rainbow = src;
        if (verify_reduction(wrapped, Concept::Nash)) ++rainbow_nash;
        const Instance gen = generate_from_rainbow(src, Concept::Core);
        const bool yes = max_rainbow_matching(src) >= src.k;
        if (yes || gen.player_count() <= 12) {
            ++rainbow_core_total;
            if (verify_reduction(wrapped, Concept::Core, OracleLimits{12, false})) ++rainbow_core;
        }
    }
    int mmm_ok = 0;
    const int mmm_total = 200;
    for (int trial = 0; trial < mmm_total; ++trial) {
        MmmSource src;
        src.u = rng.uniform(1, 4);
        src.v = rng.uniform(1, 4);
        for (int u = 0; u < src.u; ++u) {
            for (int v = 0; v < src.v; ++v) {
                if (rng.chance(0.5)) src.edges.emplace_back(u, v);
            }
        }
        if (src.edges.empty()) src.edges.emplace_back(rng.uniform(0, src.u - 1),
                                                      rng.uniform(0, src.v - 1));
        src.k = rng.uniform(1, std::min(static_cast<int>(src.edges.size()), src.v));
        ReductionSource wrapped;
        wrapped.kind = ReductionSource::Kind::Mmm;
        wrapped.mmm = src;
        if (verify_reduction(wrapped, Concept::Nash) && verify_reduction(wrapped, Concept::Core)) {
            ++mmm_ok;
        }
    }
    int sat_ok = 0;
    std::set<std::string> seen;
    const int sat_total = 60;
    while (static_cast<int>(seen.size()) < sat_total) {
        const Sat3B2Source src = random_formula(rng);
        if (!satisfiable(src)) continue;  // the reverse direction is out of desk reach
        ReductionSource wrapped;
        wrapped.kind = ReductionSource::Kind::Sat3B2;
        wrapped.sat = src;
        if (!seen.insert(wrapped.to_json().dump()).second) continue;
        if (verify_reduction(wrapped, Concept::Nash) && verify_reduction(wrapped, Concept::Core)) {
            ++sat_ok;
        }
    }
    const bool ok = rainbow_nash == rainbow_total && rainbow_core == rainbow_core_total &&
                    mmm_ok == mmm_total && sat_ok == sat_total;
    report(5, ok,
           "reduction equivalence: rainbow nash " + std::to_string(rainbow_nash) + "/200, core " +
               std::to_string(rainbow_core) + "/" + std::to_string(rainbow_core_total) +
               " (constructive plus oracle-sized), mmm " + std::to_string(mmm_ok) +
               "/200, 3sat witnesses " + std::to_string(sat_ok) + "/60");
}

void criterion_6() {
    const auto start = std::chrono::steady_clock::now();
    Rng rng(20240006);
    const int reps = 20;

    // Doubling n at fixed p: random instances, exactly the bench sampler.
    std::vector<double> t20, t40;
    for (int rep = 0; rep < reps; ++rep) {
        const Instance small = random_path_instance(rng, 20, 3, 0.3);
        t20.push_back(solve_ns_path(small).elapsed_seconds);
        const Instance big = random_path_instance(rng, 40, 3, 0.3);
        t40.push_back(solve_ns_path(big).elapsed_seconds);
    }
    const double n_ratio = median(t40) / median(t20);

    // Growth in p at fixed n: full decision sweeps on unsolvable instances.
    std::vector<double> medians;
    for (int p = 1; p <= 6; ++p) {
        std::vector<double> times;
        for (int rep = 0; rep < reps; ++rep) {
            const Instance inst = unsolvable_path_instance(rng, 40, p, 0.3);
            const SolveOutcome outcome = solve_ns_path(inst);
            if (outcome.found()) {
                report(6, false, "supposedly unsolvable bench instance was solved");
                return;
            }
            times.push_back(outcome.elapsed_seconds);
        }
        medians.push_back(median(times));
    }
    bool geometric = true;
    for (size_t i = 3; i < medians.size(); ++i) {
        if (medians[i] < 2.0 * medians[i - 1]) geometric = false;
    }
    const double total = seconds_since(start);
    const bool ok = n_ratio <= 5.0 && geometric && total < 600.0;
    std::string detail = "runtime shape: n-doubling ratio " + std::to_string(n_ratio) +
                         ", p-sweep medians";
    for (double m : medians) detail += " " + std::to_string(m);
    detail += ", bench " + std::to_string(total) + "s";
    report(6, ok, detail);
}

void criterion_7() {
    Rng rng(20240007);
    // Derandomized mode already matched the oracle in criterion 3; recheck
    // determinism and collect misses of the randomized mode on found cases.
    int found_cases = 0, derand_stable = 0, misses = 0;
    for (const StarCase& sc : star_pool) {
        if (!sc.solver_found) continue;
        if (found_cases >= 300) break;
        ++found_cases;
        if (solve_ns_star(sc.inst).found()) ++derand_stable;
        StarOptions randomized;
        randomized.mode = StarOptions::Mode::Randomized;
        randomized.seed = rng.next();
        if (!solve_ns_star(sc.inst, randomized).found()) ++misses;
    }
    const bool ok = found_cases >= 300 && derand_stable == found_cases &&
                    misses * 100 <= found_cases;
    report(7, ok,
           "star derandomization: " + std::to_string(found_cases) + " found cases, randomized" +
               " misses " + std::to_string(misses));
}

}  // namespace

int main() {
    const auto start = std::chrono::steady_clock::now();
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    std::cout << (failures == 0 ? "ALL CRITERIA PASS" : "FAILURES PRESENT") << " ("
              << seconds_since(start) << "s)" << std::endl;
    return failures == 0 ? 0 : 1;
}
