#include "ggasp/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <queue>

namespace ggasp {

OracleLimits oracle_limits_from_env() {
    OracleLimits limits;
    if (const char* env = std::getenv("GGASP_MAX_ORACLE_N")) {
        limits.max_players = std::atoi(env);
    }
    return limits;
}

namespace {

std::vector<int> scan_order(const Instance& inst) {
    const int n = inst.player_count();
    std::vector<int> order;
    order.reserve(n);
    std::vector<char> seen(n, 0);
    for (int start = 0; start < n; ++start) {
        if (seen[start]) continue;
        std::queue<int> frontier;
        frontier.push(start);
        seen[start] = 1;
        while (!frontier.empty()) {
            const int v = frontier.front();
            frontier.pop();
            order.push_back(v);
            for (int w : inst.neighbors(v)) {
                if (!seen[w]) {
                    seen[w] = 1;
                    frontier.push(w);
                }
            }
        }
    }
    return order;
}

struct Enumerator {
    const Instance& inst;
    const std::function<bool(const Assignment&)>& visit;
    std::vector<int> order;
    std::vector<char> undecided;  // true until the player picks a slot
    Assignment partial;
    std::map<GroupRef, std::vector<int>> groups;
    std::vector<int> used_count;  // per activity, copies opened so far
    bool stopped = false;

    // A partial group stays viable while all its members sit in one component
    // of the graph induced on (members + undecided players).
    bool viable(const std::vector<int>& members, int joiner) const {
        const int n = inst.player_count();
        std::vector<char> allowed(n, 0);
        for (int m : members) allowed[m] = 1;
        allowed[joiner] = 1;
        for (int v = 0; v < n; ++v) {
            if (undecided[v]) allowed[v] = 1;
        }
        std::vector<char> reached(n, 0);
        std::queue<int> frontier;
        frontier.push(joiner);
        reached[joiner] = 1;
        while (!frontier.empty()) {
            const int v = frontier.front();
            frontier.pop();
            for (int w : inst.neighbors(v)) {
                if (allowed[w] && !reached[w]) {
                    reached[w] = 1;
                    frontier.push(w);
                }
            }
        }
        return std::all_of(members.begin(), members.end(), [&](int m) { return reached[m] != 0; });
    }

    void recurse(size_t depth) {
        if (stopped) return;
        if (depth == order.size()) {
            for (const auto& [group, members] : groups) {
                if (!is_feasible_coalition(inst, members)) return;
            }
            if (!visit(partial)) stopped = true;
            return;
        }
        const int v = order[depth];
        undecided[v] = 0;

        // Stay void.
        recurse(depth + 1);

        // Join an existing group.
        if (!stopped) {
            std::vector<GroupRef> keys;
            keys.reserve(groups.size());
            for (const auto& [group, members] : groups) keys.push_back(group);
            for (const GroupRef& key : keys) {
                if (stopped) break;
                auto& members = groups[key];
                if (static_cast<int>(members.size()) >= inst.player_count()) continue;
                if (!viable(members, v)) continue;
                members.push_back(v);
                partial.assign(v, key);
                recurse(depth + 1);
                partial.clear(v);
                members.pop_back();
            }
        }

        // Open a fresh copy of some class; first-use order keeps indices canonical.
        if (!stopped) {
            for (int a = 0; a < inst.activity_count(); ++a) {
                if (stopped) break;
                if (used_count[a] >= inst.copies(a)) continue;
                const GroupRef key{a, used_count[a]};
                ++used_count[a];
                groups.emplace(key, std::vector<int>{v});
                partial.assign(v, key);
                recurse(depth + 1);
                partial.clear(v);
                groups.erase(key);
                --used_count[a];
            }
        }

        undecided[v] = 1;
    }
};

}  // namespace

void enumerate_feasible_assignments(const Instance& inst,
                                    const std::function<bool(const Assignment&)>& visit,
                                    const OracleLimits& limits) {
    const int n = inst.player_count();
    if (!limits.unbounded && n > limits.max_players) {
        throw BoundError("oracle enumeration bound exceeded: " + std::to_string(n) +
                         " players, bound is " + std::to_string(limits.max_players) +
                         " (override with GGASP_MAX_ORACLE_N or --max-oracle-n)");
    }
    Enumerator enumerator{inst,
                          visit,
                          scan_order(inst),
                          std::vector<char>(n, 1),
                          Assignment(n),
                          {},
                          std::vector<int>(inst.activity_count(), 0)};
    enumerator.recurse(0);
}

namespace {

bool stable_under(const Instance& inst, const Assignment& pi, Concept notion) {
    // Enumerated assignments are feasible by construction; the oracle checks
    // the rest with the exhaustive checkers only.
    if (!check_individually_rational(inst, pi).empty()) return false;
    switch (notion) {
        case Concept::IR:
            return true;
        case Concept::Nash:
            return !find_ns_deviation(inst, pi).has_value();
        case Concept::Core:
            return !find_strong_block(inst, pi).has_value();
    }
    return false;
}

}  // namespace

SolveOutcome oracle_find_stable(const Instance& inst, Concept notion, const OracleLimits& limits) {
    const auto start = std::chrono::steady_clock::now();
    SolveOutcome outcome;
    outcome.method = "oracle";
    enumerate_feasible_assignments(
        inst,
        [&](const Assignment& pi) {
            if (stable_under(inst, pi, notion)) {
                outcome.status = SolveOutcome::Status::Found;
                outcome.assignment = pi;
                return false;
            }
            return true;
        },
        limits);
    outcome.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return outcome;
}

long long oracle_count_stable(const Instance& inst, Concept notion, const OracleLimits& limits) {
    long long count = 0;
    enumerate_feasible_assignments(
        inst,
        [&](const Assignment& pi) {
            if (stable_under(inst, pi, notion)) ++count;
            return true;
        },
        limits);
    return count;
}

}  // namespace ggasp
