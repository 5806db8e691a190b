#include <algorithm>
#include <chrono>

#include "ggasp/fpt.hpp"
#include "ggasp/stability.hpp"

namespace ggasp {

namespace {

constexpr int kNoRank = std::numeric_limits<int>::min();

std::vector<int> path_order(const Instance& inst) {
    const int n = inst.player_count();
    if (n == 1) return {0};
    int start = -1;
    for (int v = 0; v < n; ++v) {
        if (inst.neighbors(v).size() == 1) {
            start = v;
            break;
        }
    }
    std::vector<int> order{start};
    int prev = -1;
    int cur = start;
    while (static_cast<int>(order.size()) < n) {
        int next = -1;
        for (int w : inst.neighbors(cur)) {
            if (w != prev) next = w;
        }
        order.push_back(next);
        prev = cur;
        cur = next;
    }
    return order;
}

struct PathDp {
    const Instance& inst;
    std::vector<int> order;  // player at each position
    int n;
    int p;
    int alt_count;  // p*n + 1, void last

    explicit PathDp(const Instance& instance)
        : inst(instance), order(path_order(instance)), n(instance.player_count()),
          p(instance.activity_count()), alt_count(instance.activity_count() * instance.player_count() + 1) {}

    int void_alt() const { return alt_count - 1; }
    int alt_class(int alt) const { return alt == void_alt() ? kVoidActivity : alt / n; }
    int alt_size(int alt) const { return alt == void_alt() ? 1 : alt % n + 1; }
    Alternative alt_of(int alt) const { return Alternative{alt_class(alt), alt_size(alt)}; }

    int rank_at(int pos, int alt) const { return inst.rank(order[pos], alt_of(alt)); }
    // Rank of joining an existing group holding `alt`, or kNoRank if no such move.
    int join_rank_at(int pos, int alt) const {
        if (alt == void_alt() || alt_size(alt) + 1 > n) return kNoRank;
        return inst.rank(order[pos], Alternative{alt_class(alt), alt_size(alt) + 1});
    }
};

// Candidates completed at the position left of a group start, indexed for
// queries "is there (b,l) with rank_left(b,l) >= x and join_rank_right <= y".
struct SeparationIndex {
    struct Entry {
        int stay_rank;  // left player's rank of (b,l)
        int cross_rank; // right player's rank of (b,l+1), kNoRank if unjoinable
        int alt;
    };
    std::vector<Entry> entries;  // sorted by stay_rank descending
    std::vector<int> prefix_min_cross;

    void build(std::vector<Entry> list) {
        entries = std::move(list);
        std::sort(entries.begin(), entries.end(),
                  [](const Entry& a, const Entry& b) { return a.stay_rank > b.stay_rank; });
        prefix_min_cross.resize(entries.size());
        int running = std::numeric_limits<int>::max();
        for (size_t i = 0; i < entries.size(); ++i) {
            running = std::min(running, entries[i].cross_rank == kNoRank
                                            ? std::numeric_limits<int>::min() + 1
                                            : entries[i].cross_rank);
            prefix_min_cross[i] = running;
        }
    }

    bool query(int min_stay, int max_cross) const {
        if (entries.empty()) return false;
        // Last entry with stay_rank >= min_stay.
        int lo = 0;
        int hi = static_cast<int>(entries.size()) - 1;
        int found = -1;
        while (lo <= hi) {
            const int mid = (lo + hi) / 2;
            if (entries[mid].stay_rank >= min_stay) {
                found = mid;
                lo = mid + 1;
            } else {
                hi = mid - 1;
            }
        }
        if (found < 0) return false;
        return prefix_min_cross[found] <= max_cross;
    }
};

}  // namespace

SolveOutcome solve_ns_path(const Instance& inst) {
    const auto start_time = std::chrono::steady_clock::now();
    const Topology topo = classify_topology(inst);
    if (topo.tag != TopologyTag::Path) throw SolverError("solve_ns_path requires a path");
    if (!inst.all_single_copy()) {
        throw SolverError("solve_ns_path requires single-copy activities");
    }

    PathDp dp(inst);
    const int n = dp.n;
    const int p = dp.p;
    const int alt_count = dp.alt_count;
    const int full = (1 << p) - 1;

    SolveOutcome outcome;
    outcome.method = "path";

    // started[i][B'][alt]: a group holding `alt` starts at position i, the
    // segment [0..i] uses exactly the activities in B' (alt's class included),
    // every earlier group is complete and separable from its successor.
    std::vector<std::vector<std::vector<uint8_t>>> started;
    // guard_run[i][alt]: consecutive positions ending at i whose players all
    // weakly prefer alt to engaging alone in anything outside B.
    std::vector<std::vector<int>> guard_run;

    for (int B = 0; B <= full; ++B) {
        // Per-player guard threshold: best rank among singleton alternatives
        // outside B (those are always open to deviate to), void included.
        std::vector<int> threshold(n, 0);
        for (int pos = 0; pos < n; ++pos) {
            int best = 0;
            for (int b = 0; b < p; ++b) {
                if (!(B >> b & 1)) best = std::max(best, inst.rank(dp.order[pos], Alternative{b, 1}));
            }
            threshold[pos] = best;
        }
        guard_run.assign(n, std::vector<int>(alt_count, 0));
        for (int pos = 0; pos < n; ++pos) {
            for (int alt = 0; alt < alt_count; ++alt) {
                const bool ok = dp.rank_at(pos, alt) >= threshold[pos];
                guard_run[pos][alt] = ok ? (pos > 0 ? guard_run[pos - 1][alt] : 0) + 1 : 0;
            }
        }

        started.assign(n, std::vector<std::vector<uint8_t>>(B + 1));
        auto row = [&](int pos, int mask) -> std::vector<uint8_t>& {
            auto& slot = started[pos][mask];
            if (slot.empty()) slot.assign(alt_count, 0);
            return slot;
        };

        // Position 0 starts its own group.
        for (int alt = 0; alt < alt_count; ++alt) {
            if (guard_run[0][alt] == 0) continue;
            const int cls = dp.alt_class(alt);
            if (cls == kVoidActivity) {
                row(0, 0)[alt] = 1;
            } else if (B >> cls & 1) {
                row(0, 1 << cls)[alt] = 1;
            }
        }

        auto completed_before = [&](int pos, int mask) {
            // Groups that end exactly at position pos with used-set `mask`.
            std::vector<SeparationIndex::Entry> list;
            for (int alt = 0; alt < alt_count; ++alt) {
                const int size = dp.alt_size(alt);
                const int start = pos - size + 1;
                if (start < 0 || guard_run[pos][alt] < size) continue;
                const auto& slot = started[start][mask];
                if (slot.empty() || !slot[alt]) continue;
                list.push_back({dp.rank_at(pos, alt), dp.join_rank_at(pos + 1, alt), alt});
            }
            return list;
        };

        for (int pos = 1; pos < n; ++pos) {
            for (int mask = 0; mask <= B; ++mask) {
                if ((mask & B) != mask) continue;
                auto list = completed_before(pos - 1, mask);
                if (list.empty()) continue;
                SeparationIndex index;
                index.build(std::move(list));
                for (int alt = 0; alt < alt_count; ++alt) {
                    if (guard_run[pos][alt] == 0) continue;
                    const int cls = dp.alt_class(alt);
                    int next_mask;
                    if (cls == kVoidActivity) {
                        next_mask = mask;
                    } else {
                        if (!(B >> cls & 1) || (mask >> cls & 1)) continue;
                        next_mask = mask | (1 << cls);
                    }
                    // Left player must keep its group over joining this one;
                    // this player must keep alt over joining the left group.
                    const int min_stay = dp.join_rank_at(pos - 1, alt) == kNoRank
                                             ? std::numeric_limits<int>::min()
                                             : inst.rank(dp.order[pos - 1],
                                                         Alternative{cls, dp.alt_size(alt) + 1});
                    if (index.query(min_stay, dp.rank_at(pos, alt))) {
                        row(pos, next_mask)[alt] = 1;
                    }
                }
            }
        }

        // Accept: the final group ends at the last position having used all of B.
        int accepted_alt = -1;
        for (int alt = 0; alt < alt_count && accepted_alt < 0; ++alt) {
            const int size = dp.alt_size(alt);
            const int start = n - size;
            if (start < 0 || guard_run[n - 1][alt] < size) continue;
            const auto& slot = started[start][B];
            if (!slot.empty() && slot[alt]) accepted_alt = alt;
        }
        if (accepted_alt < 0) continue;

        // Traceback.
        Assignment pi(n);
        int alt = accepted_alt;
        int mask = B;
        int end = n - 1;
        while (end >= 0) {
            const int cls = dp.alt_class(alt);
            const int size = dp.alt_size(alt);
            const int start = end - size + 1;
            if (cls != kVoidActivity) {
                for (int pos = start; pos <= end; ++pos) {
                    pi.assign(dp.order[pos], GroupRef{cls, 0});
                }
            }
            if (start == 0) break;
            const int prev_mask = cls == kVoidActivity ? mask : mask & ~(1 << cls);
            const int min_stay = dp.join_rank_at(start - 1, alt) == kNoRank
                                     ? std::numeric_limits<int>::min()
                                     : inst.rank(dp.order[start - 1], Alternative{cls, size + 1});
            int chosen = -1;
            for (int cand = 0; cand < alt_count && chosen < 0; ++cand) {
                const int csize = dp.alt_size(cand);
                const int cstart = start - csize;
                if (cstart < 0 || guard_run[start - 1][cand] < csize) continue;
                const auto& slot = started[cstart][prev_mask];
                if (slot.empty() || !slot[cand]) continue;
                if (dp.rank_at(start - 1, cand) < min_stay) continue;
                const int cross = dp.join_rank_at(start, cand);
                if (cross != kNoRank && cross > dp.rank_at(start, alt)) continue;
                chosen = cand;
            }
            if (chosen < 0) throw SolverError("inconsistent traceback in path DP");
            alt = chosen;
            mask = prev_mask;
            end = start - 1;
        }

        if (!check_assignment_feasible(inst, pi) ||
            !check_individually_rational(inst, pi).empty() ||
            find_ns_deviation(inst, pi).has_value()) {
            throw SolverError("path DP produced an unstable assignment");
        }
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

}  // namespace ggasp
