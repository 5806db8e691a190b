#include "ggasp/stability.hpp"

#include <algorithm>
#include <queue>
#include <tuple>

namespace ggasp {

namespace {

std::vector<int> current_ranks(const Instance& inst, const Assignment& pi) {
    const int n = inst.player_count();
    auto groups = pi.groups();
    std::vector<int> out(n, 0);
    for (int i = 0; i < n; ++i) {
        const auto& slot = pi.slot(i);
        if (!slot.has_value()) continue;  // void rank is 0
        const auto& members = groups.at(*slot);
        out[i] = inst.rank(i, Alternative{slot->activity, static_cast<int>(members.size())});
    }
    return out;
}

using UsedCopies = std::vector<std::vector<std::pair<int, const std::vector<int>*>>>;

UsedCopies used_copies_by_activity(const Instance& inst,
                                   const std::map<GroupRef, std::vector<int>>& groups) {
    UsedCopies used(inst.activity_count());
    for (const auto& [group, list] : groups) {
        used[group.activity].emplace_back(group.copy, &list);
    }
    return used;
}

// Smallest copy index of `a` usable by a coalition S of size k: either an
// unused copy (no containment requirement) or a used copy whose group lies
// entirely inside S. Returns -1 if none qualifies.
int pick_copy(const Instance& inst, const UsedCopies& used, int a, int k,
              const std::vector<char>& in_set) {
    int next_gap = 0;
    for (const auto& [j, group] : used[a]) {
        if (next_gap < j) return next_gap;
        if (static_cast<int>(group->size()) <= k &&
            std::all_of(group->begin(), group->end(), [&](int m) { return in_set[m] != 0; })) {
            return j;
        }
        next_gap = j + 1;
    }
    if (next_gap < inst.copies(a)) return next_gap;
    return -1;
}

}  // namespace

const char* to_string(Concept notion) {
    switch (notion) {
        case Concept::Nash: return "nash";
        case Concept::Core: return "core";
        case Concept::IR: return "ir";
    }
    return "?";
}

bool check_assignment_feasible(const Instance& inst, const Assignment& pi) {
    validate_assignment(inst, pi);
    for (const auto& [group, members] : pi.groups()) {
        if (!is_feasible_coalition(inst, members)) return false;
    }
    return true;
}

std::vector<int> check_individually_rational(const Instance& inst, const Assignment& pi) {
    validate_assignment(inst, pi);
    std::vector<int> violators;
    const std::vector<int> ranks = current_ranks(inst, pi);
    for (int i = 0; i < inst.player_count(); ++i) {
        if (!pi.is_void(i) && ranks[i] < 0) violators.push_back(i);
    }
    return violators;
}

std::optional<Deviation> find_ns_deviation(const Instance& inst, const Assignment& pi) {
    const int n = inst.player_count();
    const auto groups = pi.groups();
    const std::vector<int> ranks = current_ranks(inst, pi);
    for (int i = 0; i < n; ++i) {
        for (int a = 0; a < inst.activity_count(); ++a) {
            for (int j = 0; j < inst.copies(a); ++j) {
                const GroupRef target{a, j};
                auto it = groups.find(target);
                if (it == groups.end()) {
                    // Unused copy: engage alone. Later unused copies are
                    // interchangeable with this one.
                    if (inst.rank(i, Alternative{a, 1}) > ranks[i]) {
                        return Deviation{i, target};
                    }
                    break;
                }
                const auto& members = it->second;
                if (pi.slot(i) == std::optional<GroupRef>{target}) continue;
                const int joined = static_cast<int>(members.size()) + 1;
                if (joined > n) continue;
                if (inst.rank(i, Alternative{a, joined}) <= ranks[i]) continue;
                const bool touches = std::any_of(members.begin(), members.end(),
                                                 [&](int m) { return inst.adjacent(i, m); });
                if (touches) return Deviation{i, target};
            }
        }
    }
    return std::nullopt;
}

namespace {

struct BlockSearch {
    const Instance& inst;
    std::vector<int> ranks;
    UsedCopies used;
    std::vector<char> in_set;
    std::optional<BlockingCertificate> best;

    void consider(const std::vector<int>& members_unsorted) {
        std::vector<int> members = members_unsorted;
        std::sort(members.begin(), members.end());
        const int k = static_cast<int>(members.size());
        for (int m : members) in_set[m] = 1;
        for (int a = 0; a < inst.activity_count(); ++a) {
            const Alternative alt{a, k};
            const bool all_strict = std::all_of(members.begin(), members.end(), [&](int i) {
                return inst.rank(i, alt) > ranks[i];
            });
            if (!all_strict) continue;
            const int copy = pick_copy(inst, used, a, k, in_set);
            if (copy < 0) continue;
            BlockingCertificate cert{members, GroupRef{a, copy}};
            if (!best.has_value() ||
                std::tie(cert.coalition, cert.target) < std::tie(best->coalition, best->target)) {
                best = std::move(cert);
            }
        }
        for (int m : members) in_set[m] = 0;
    }
};

// Enumerates each connected subset whose minimum vertex is `root` exactly
// once. status: 0 free, 1 member, 2 excluded on this branch.
struct ConnectedEnumerator {
    const Instance& inst;
    int root;
    std::vector<int> members;
    std::vector<char> status;
    BlockSearch& search;

    void run(const std::vector<int>& candidates) {
        search.consider(members);
        for (size_t i = 0; i < candidates.size(); ++i) {
            const int v = candidates[i];
            std::vector<int> next(candidates.begin() + i + 1, candidates.end());
            for (int w : inst.neighbors(v)) {
                if (w > root && status[w] == 0 &&
                    std::find(next.begin(), next.end(), w) == next.end()) {
                    next.push_back(w);
                }
            }
            status[v] = 1;
            members.push_back(v);
            run(next);
            members.pop_back();
            status[v] = 2;
        }
        for (int v : candidates) {
            if (status[v] == 2) status[v] = 0;
        }
    }
};

}  // namespace

std::optional<BlockingCertificate> find_strong_block(const Instance& inst, const Assignment& pi,
                                                     const StrongBlockLimits& limits) {
    const int n = inst.player_count();
    if (!limits.unbounded && n > limits.max_players) {
        throw BoundError("find_strong_block enumerates connected subsets; instance has " +
                         std::to_string(n) + " players, bound is " +
                         std::to_string(limits.max_players));
    }
    const auto groups = pi.groups();
    BlockSearch search{inst, current_ranks(inst, pi), used_copies_by_activity(inst, groups),
                       std::vector<char>(n, 0), std::nullopt};

    for (int root = 0; root < n; ++root) {
        ConnectedEnumerator enumerator{inst, root, {root}, std::vector<char>(n, 0), search};
        enumerator.status[root] = 1;
        std::vector<int> candidates;
        for (int w : inst.neighbors(root)) {
            if (w > root) candidates.push_back(w);
        }
        enumerator.run(candidates);
    }
    return search.best;
}

std::optional<BlockingCertificate> check_core_forest(const Instance& inst, const Assignment& pi) {
    const int n = inst.player_count();
    if (!classify_topology(inst).acyclic) {
        throw SolverError("check_core_forest requires an acyclic graph");
    }

    const std::vector<int> ranks = current_ranks(inst, pi);
    const auto groups = pi.groups();
    const UsedCopies used = used_copies_by_activity(inst, groups);

    std::vector<char> in_want(n, 0);
    for (int a = 0; a < inst.activity_count(); ++a) {
        for (int k = 1; k <= n; ++k) {
            const Alternative alt{a, k};
            std::vector<int> want;
            for (int i = 0; i < n; ++i) {
                if (inst.rank(i, alt) > ranks[i]) want.push_back(i);
            }
            if (static_cast<int>(want.size()) < k) continue;
            std::fill(in_want.begin(), in_want.end(), 0);
            for (int i : want) in_want[i] = 1;

            std::vector<char> seen(n, 0);
            for (int start : want) {
                if (seen[start]) continue;
                std::vector<int> comp;
                std::queue<int> frontier;
                frontier.push(start);
                seen[start] = 1;
                while (!frontier.empty()) {
                    const int v = frontier.front();
                    frontier.pop();
                    comp.push_back(v);
                    for (int w : inst.neighbors(v)) {
                        if (in_want[w] && !seen[w]) {
                            seen[w] = 1;
                            frontier.push(w);
                        }
                    }
                }
                if (static_cast<int>(comp.size()) < k) continue;

                std::vector<char> in_comp(n, 0);
                for (int v : comp) in_comp[v] = 1;
                const int copy = pick_copy(inst, used, a, k, in_comp);
                if (copy < 0) continue;

                std::vector<char> in_core(n, 0);
                for (const auto& [j, g] : used[a]) {
                    if (j == copy) {
                        for (int m : *g) in_core[m] = 1;
                    }
                }

                // Carve a size-k witness: drop the highest-id leaf outside the
                // retained group until exactly k vertices remain.
                std::vector<int> degree(n, 0);
                std::vector<char> alive = in_comp;
                for (int v : comp) {
                    for (int w : inst.neighbors(v)) {
                        if (alive[w]) ++degree[v];
                    }
                }
                int remaining = static_cast<int>(comp.size());
                while (remaining > k) {
                    int leaf = -1;
                    for (int v = n - 1; v >= 0; --v) {
                        if (alive[v] && degree[v] <= 1 && !in_core[v]) {
                            leaf = v;
                            break;
                        }
                    }
                    if (leaf < 0) throw SolverError("leaf pruning failed in check_core_forest");
                    alive[leaf] = 0;
                    --remaining;
                    for (int w : inst.neighbors(leaf)) {
                        if (alive[w]) --degree[w];
                    }
                }
                Coalition witness;
                for (int v = 0; v < n; ++v) {
                    if (alive[v]) witness.push_back(v);
                }
                return BlockingCertificate{witness, GroupRef{a, copy}};
            }
        }
    }
    return std::nullopt;
}

StabilityReport analyze_assignment(const Instance& inst, const Assignment& pi, Concept notion,
                                   const StrongBlockLimits& limits) {
    StabilityReport report;
    report.feasible = check_assignment_feasible(inst, pi);
    if (!report.feasible) return report;
    report.ir_violations = check_individually_rational(inst, pi);
    if (notion == Concept::IR || !report.ir_violations.empty()) return report;
    if (notion == Concept::Nash) {
        report.ns_witness = find_ns_deviation(inst, pi);
    } else if (notion == Concept::Core) {
        if (classify_topology(inst).acyclic) {
            report.core_witness = check_core_forest(inst, pi);
        } else {
            report.core_witness = find_strong_block(inst, pi, limits);
        }
    }
    return report;
}

bool is_stable(const Instance& inst, const Assignment& pi, Concept notion,
               const StrongBlockLimits& limits) {
    const StabilityReport report = analyze_assignment(inst, pi, notion, limits);
    if (!report.feasible || !report.individually_rational()) return false;
    if (notion == Concept::Nash) return !report.ns_witness.has_value();
    if (notion == Concept::Core) return !report.core_witness.has_value();
    return true;
}

}  // namespace ggasp
