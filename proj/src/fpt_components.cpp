#include <algorithm>
#include <bit>
#include <chrono>
#include <map>
#include <tuple>

#include "ggasp/fpt.hpp"
#include "ggasp/stability.hpp"
#include "ggasp/tree.hpp"

namespace ggasp {

namespace {

std::vector<char> connected_masks(const Instance& sub) {
    const int m = sub.player_count();
    std::vector<char> ok(1u << m, 0);
    for (uint32_t mask = 1; mask < (1u << m); ++mask) {
        if ((mask & (mask - 1)) == 0) {
            ok[mask] = 1;
            continue;
        }
        // BFS from the lowest member, restricted to the set.
        const int start = std::countr_zero(mask);
        uint32_t reached = 1u << start;
        uint32_t frontier = reached;
        while (frontier != 0) {
            uint32_t next = 0;
            for (int v = 0; v < m; ++v) {
                if (!(frontier >> v & 1)) continue;
                for (int w : sub.neighbors(v)) {
                    if ((mask >> w & 1) && !(reached >> w & 1)) {
                        next |= 1u << w;
                        reached |= 1u << w;
                    }
                }
            }
            frontier = next;
        }
        ok[mask] = reached == mask;
    }
    return ok;
}

struct CompCtx {
    Instance sub;
    std::vector<int> vertices;  // global ids, ascending
    std::vector<char> conn;
};

// Searches one component for an assignment onto `allotted` activities (each
// used at least once, connected groups, individually rational) that passes the
// notion-specific stability conditions against the global guess mask.
class InnerSearch {
public:
    InnerSearch(const CompCtx& ctx, int activity_count)
        : ctx_(ctx), activity_count_(activity_count) {}

    std::optional<Assignment> run(const std::vector<int>& allotted, int guess_mask,
                                  Concept notion) const {
        const int m = ctx_.sub.player_count();
        const int base = static_cast<int>(allotted.size()) + 1;
        std::vector<int> digits(m, 0);
        while (true) {
            auto cand = materialize(allotted, digits);
            if (cand.has_value()) {
                const bool ok = notion == Concept::Nash
                                    ? nash_ok(*cand, allotted, guess_mask)
                                    : core_ok(*cand, allotted, guess_mask);
                if (ok) {
                    Assignment pi(m);
                    for (int v = 0; v < m; ++v) {
                        if ((*cand)[v] > 0) pi.assign(v, GroupRef{allotted[(*cand)[v] - 1], 0});
                    }
                    return pi;
                }
            }
            int at = 0;
            while (at < m && ++digits[at] == base) digits[at++] = 0;
            if (at == m) return std::nullopt;
        }
    }

private:
    // Returns the digit vector if it is feasible, IR and uses every activity.
    std::optional<std::vector<int>> materialize(const std::vector<int>& allotted,
                                                const std::vector<int>& digits) const {
        const int m = ctx_.sub.player_count();
        std::vector<uint32_t> group_mask(allotted.size(), 0);
        for (int v = 0; v < m; ++v) {
            if (digits[v] > 0) group_mask[digits[v] - 1] |= 1u << v;
        }
        for (size_t idx = 0; idx < allotted.size(); ++idx) {
            if (group_mask[idx] == 0 || !ctx_.conn[group_mask[idx]]) return std::nullopt;
        }
        for (int v = 0; v < m; ++v) {
            if (digits[v] == 0) continue;
            const int size = std::popcount(group_mask[digits[v] - 1]);
            if (ctx_.sub.rank(v, Alternative{allotted[digits[v] - 1], size}) < 0) {
                return std::nullopt;
            }
        }
        return digits;
    }

    std::vector<int> current_ranks(const std::vector<int>& digits,
                                   const std::vector<int>& allotted,
                                   const std::vector<uint32_t>& group_mask) const {
        const int m = ctx_.sub.player_count();
        std::vector<int> cur(m, 0);
        for (int v = 0; v < m; ++v) {
            if (digits[v] > 0) {
                const int idx = digits[v] - 1;
                cur[v] = ctx_.sub.rank(
                    v, Alternative{allotted[idx], std::popcount(group_mask[idx])});
            }
        }
        return cur;
    }

    std::vector<uint32_t> masks_of(const std::vector<int>& digits, size_t slots) const {
        std::vector<uint32_t> group_mask(slots, 0);
        for (int v = 0; v < ctx_.sub.player_count(); ++v) {
            if (digits[v] > 0) group_mask[digits[v] - 1] |= 1u << v;
        }
        return group_mask;
    }

    // No player may profit from joining a group inside the component or from
    // engaging alone in an activity outside the global guess. Groups in other
    // components are disconnected from here, hence unreachable.
    bool nash_ok(const std::vector<int>& digits, const std::vector<int>& allotted,
                 int guess_mask) const {
        const int m = ctx_.sub.player_count();
        const auto group_mask = masks_of(digits, allotted.size());
        const auto cur = current_ranks(digits, allotted, group_mask);
        for (int v = 0; v < m; ++v) {
            for (size_t idx = 0; idx < allotted.size(); ++idx) {
                if (digits[v] == static_cast<int>(idx) + 1) continue;
                const int joined = std::popcount(group_mask[idx]) + 1;
                if (joined > m) continue;
                if (ctx_.sub.rank(v, Alternative{allotted[idx], joined}) <= cur[v]) continue;
                if (ctx_.conn[group_mask[idx] | (1u << v)]) return false;
            }
            for (int b = 0; b < activity_count_; ++b) {
                if (guess_mask >> b & 1) continue;
                if (ctx_.sub.rank(v, Alternative{b, 1}) > cur[v]) return false;
            }
        }
        return true;
    }

    // No connected subset together with a component-local or globally unused
    // activity may strongly block.
    bool core_ok(const std::vector<int>& digits, const std::vector<int>& allotted,
                 int guess_mask) const {
        const int m = ctx_.sub.player_count();
        const auto group_mask = masks_of(digits, allotted.size());
        const auto cur = current_ranks(digits, allotted, group_mask);
        for (uint32_t set = 1; set < (1u << m); ++set) {
            if (!ctx_.conn[set]) continue;
            const int k = std::popcount(set);
            auto all_strict = [&](int activity) {
                for (int v = 0; v < m; ++v) {
                    if (!(set >> v & 1)) continue;
                    if (ctx_.sub.rank(v, Alternative{activity, k}) <= cur[v]) return false;
                }
                return true;
            };
            for (size_t idx = 0; idx < allotted.size(); ++idx) {
                if ((group_mask[idx] & ~set) != 0) continue;  // containment
                if (all_strict(allotted[idx])) return false;
            }
            for (int b = 0; b < activity_count_; ++b) {
                if (guess_mask >> b & 1) continue;
                if (all_strict(b)) return false;
            }
        }
        return true;
    }

    const CompCtx& ctx_;
    int activity_count_;
};

SolveOutcome solve_components_impl(const Instance& inst, const ComponentBound& bound,
                                   Concept notion) {
    const auto start_time = std::chrono::steady_clock::now();
    if (!inst.all_single_copy()) {
        throw SolverError("component solvers require single-copy activities");
    }
    const Topology topo = classify_topology(inst);
    if (topo.max_component_size > bound.max_component_size) {
        throw BoundError("component size " + std::to_string(topo.max_component_size) +
                         " exceeds the bound " + std::to_string(bound.max_component_size));
    }

    std::vector<CompCtx> contexts;
    for (const auto& comp : topo.components) {
        CompCtx ctx;
        ctx.sub = induced_subinstance(inst, comp);
        ctx.vertices = comp;
        ctx.conn = connected_masks(ctx.sub);
        contexts.push_back(std::move(ctx));
    }

    const int p = inst.activity_count();
    const int full = (1 << p) - 1;
    const int k = topo.component_count;

    std::map<std::tuple<int, int, int>, std::optional<Assignment>> memo;
    auto inner = [&](int ci, int qmask, int guess) -> const std::optional<Assignment>& {
        const auto key = std::make_tuple(ci, qmask, guess);
        auto it = memo.find(key);
        if (it == memo.end()) {
            std::vector<int> allotted;
            for (int a = 0; a < p; ++a) {
                if (qmask >> a & 1) allotted.push_back(a);
            }
            InnerSearch search(contexts[ci], p);
            it = memo.emplace(key, search.run(allotted, guess, notion)).first;
        }
        return it->second;
    };

    SolveOutcome outcome;
    outcome.method = notion == Concept::Nash ? "components" : "components-core";

    for (int guess = 0; guess <= full; ++guess) {
        std::vector<std::vector<char>> reachable(k + 1, std::vector<char>(full + 1, 0));
        std::vector<std::vector<int>> choice(k + 1, std::vector<int>(full + 1, -1));
        reachable[0][0] = 1;
        for (int ci = 1; ci <= k; ++ci) {
            for (int mask = 0; mask <= guess; ++mask) {
                if ((mask & guess) != mask) continue;
                for (int qmask = mask;; qmask = (qmask - 1) & mask) {
                    if (reachable[ci - 1][mask ^ qmask] &&
                        inner(ci - 1, qmask, guess).has_value()) {
                        reachable[ci][mask] = 1;
                        choice[ci][mask] = qmask;
                        break;
                    }
                    if (qmask == 0) break;
                }
            }
        }
        if (!reachable[k][guess]) continue;

        Assignment pi(inst.player_count());
        int mask = guess;
        for (int ci = k; ci >= 1; --ci) {
            const int qmask = choice[ci][mask];
            const auto& local = inner(ci - 1, qmask, guess);
            for (int v = 0; v < contexts[ci - 1].sub.player_count(); ++v) {
                const auto& slot = local->slot(v);
                if (slot.has_value()) pi.assign(contexts[ci - 1].vertices[v], *slot);
            }
            mask ^= qmask;
        }

        const StrongBlockLimits no_limit{.max_players = 0, .unbounded = true};
        bool verified = check_assignment_feasible(inst, pi) &&
                        check_individually_rational(inst, pi).empty();
        if (verified && notion == Concept::Nash) {
            verified = !find_ns_deviation(inst, pi).has_value();
        } else if (verified) {
            verified = !find_strong_block(inst, pi, no_limit).has_value();
        }
        if (!verified) throw SolverError("component DP produced an unstable assignment");

        outcome.status = SolveOutcome::Status::Found;
        outcome.assignment = pi;
        outcome.elapsed_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time).count();
        return outcome;
    }

    outcome.status = SolveOutcome::Status::NoneExists;
    outcome.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time).count();
    return outcome;
}

}  // namespace

SolveOutcome solve_ns_components(const Instance& inst, const ComponentBound& bound) {
    return solve_components_impl(inst, bound, Concept::Nash);
}

SolveOutcome solve_core_components(const Instance& inst, const ComponentBound& bound) {
    return solve_components_impl(inst, bound, Concept::Core);
}

}  // namespace ggasp
