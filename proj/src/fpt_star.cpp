#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "ggasp/fpt.hpp"
#include "ggasp/rng.hpp"
#include "ggasp/stability.hpp"

namespace ggasp {

namespace {

struct StarShape {
    int center = 0;
    std::vector<int> leaves;
};

StarShape star_shape(const Instance& inst) {
    const int n = inst.player_count();
    const Topology topo = classify_topology(inst);
    if (!topo.connected || static_cast<int>(inst.edges().size()) != n - 1) {
        throw SolverError("solve_ns_star requires a star");
    }
    StarShape shape;
    if (n <= 2) {
        shape.center = 0;
    } else {
        int center = -1;
        for (int v = 0; v < n; ++v) {
            if (static_cast<int>(inst.neighbors(v).size()) == n - 1) center = v;
        }
        if (center < 0) throw SolverError("solve_ns_star requires a star");
        shape.center = center;
    }
    for (int v = 0; v < n; ++v) {
        if (v != shape.center) shape.leaves.push_back(v);
    }
    return shape;
}

// Per-guess leaf capabilities. "Joining" refers to the center's group; a leaf
// engaging alone holds a color activity; leaf-to-leaf moves are disconnected
// and never tested.
struct LeafTraits {
    std::vector<char> can_join;
    std::vector<char> can_void;
    // solo_ok[l * colors + ci]
    std::vector<char> solo_ok;
};

struct Guess {
    Alternative center_alt;
    std::vector<int> colors;  // activity ids held by lone leaves, ascending
};

class StarGuess {
public:
    StarGuess(const Instance& inst, const StarShape& shape, const Guess& guess)
        : inst_(inst), shape_(shape), guess_(guess) {
        const int n = inst.player_count();
        const int num_leaves = static_cast<int>(shape.leaves.size());
        const int b = static_cast<int>(guess.colors.size());
        in_colors_.assign(inst.activity_count(), 0);
        for (int c : guess.colors) in_colors_[c] = 1;

        traits_.can_join.assign(num_leaves, 0);
        traits_.can_void.assign(num_leaves, 0);
        traits_.solo_ok.assign(static_cast<size_t>(num_leaves) * std::max(b, 1), 0);
        const Alternative& alt = guess.center_alt;
        const bool center_void = alt.is_void();
        const int join_size = alt.size + 1;
        for (int li = 0; li < num_leaves; ++li) {
            const int leaf = shape.leaves[li];
            // Best singleton outside the guess; those stay open to deviate to.
            int threshold = 0;
            for (int x = 0; x < inst.activity_count(); ++x) {
                if (in_colors_[x] || x == alt.activity) continue;
                threshold = std::max(threshold, inst.rank(leaf, Alternative{x, 1}));
            }
            const int pull = center_void || join_size > n
                                 ? std::numeric_limits<int>::min()
                                 : inst.rank(leaf, Alternative{alt.activity, join_size});
            if (!center_void) {
                traits_.can_join[li] = inst.rank(leaf, alt) >= threshold;
            }
            traits_.can_void[li] = 0 >= threshold && 0 >= pull;
            for (int ci = 0; ci < b; ++ci) {
                const int r = inst.rank(leaf, Alternative{guess.colors[ci], 1});
                traits_.solo_ok[static_cast<size_t>(li) * b + ci] = r >= threshold && r >= pull;
            }
        }
    }

    bool center_ok() const {
        const int center = shape_.center;
        const int mine = inst_.rank(center, guess_.center_alt);
        if (mine < 0) return false;
        for (int c : guess_.colors) {
            if (inst_.player_count() >= 2 && mine < inst_.rank(center, Alternative{c, 2}))
                return false;
        }
        for (int x = 0; x < inst_.activity_count(); ++x) {
            if (in_colors_[x] || x == guess_.center_alt.activity) continue;
            if (mine < inst_.rank(center, Alternative{x, 1})) return false;
        }
        return true;
    }

    // Every guessed color needs at least one leaf able to hold it alone;
    // otherwise no coloring can succeed and the guess dies early.
    bool colors_have_candidates() const {
        const int b = static_cast<int>(guess_.colors.size());
        for (int ci = 0; ci < b; ++ci) {
            bool any = false;
            for (size_t li = 0; li < shape_.leaves.size() && !any; ++li) {
                any = traits_.solo_ok[li * b + ci] != 0;
            }
            if (!any) return false;
        }
        return true;
    }

    // Counting DP for one coloring of the leaves; returns a full assignment if
    // exactly one leaf per color can hold it solo while the center ends up in
    // a group of the guessed size.
    std::optional<Assignment> try_coloring(const std::vector<int>& coloring) const {
        const int num_leaves = static_cast<int>(shape_.leaves.size());
        const int b = static_cast<int>(guess_.colors.size());
        const int k = guess_.center_alt.size;
        std::vector<std::vector<int>> classes(b);
        for (int li = 0; li < num_leaves; ++li) classes[coloring[li]].push_back(li);

        // avail[ci][x]: some member of class ci can hold the color while x
        // classmates join the center's group; solo[ci][x] remembers who.
        std::vector<std::vector<char>> avail(b, std::vector<char>(k, 0));
        std::vector<std::vector<int>> solo(b, std::vector<int>(k, -1));
        for (int ci = 0; ci < b; ++ci) {
            if (classes[ci].empty()) return std::nullopt;  // color unused
            for (int li : classes[ci]) {
                std::vector<char> f(k, 0);
                f[0] = traits_.solo_ok[static_cast<size_t>(li) * b + ci];
                for (int lj : classes[ci]) {
                    if (lj == li) continue;
                    for (int x = k - 1; x >= 0; --x) {
                        const bool join_branch = x > 0 && f[x - 1] && traits_.can_join[lj];
                        const bool void_branch = f[x] && traits_.can_void[lj];
                        f[x] = join_branch || void_branch;
                    }
                }
                for (int x = 0; x < k; ++x) {
                    if (f[x] && !avail[ci][x]) {
                        avail[ci][x] = 1;
                        solo[ci][x] = li;
                    }
                }
            }
        }

        // total[ci][t]: after the first ci classes, t center-group members
        // (center included) are accounted for.
        std::vector<std::vector<char>> total(b + 1, std::vector<char>(k + 1, 0));
        total[0][1] = 1;
        for (int ci = 0; ci < b; ++ci) {
            for (int t = 1; t <= k; ++t) {
                for (int x = 0; x < std::min(t, k); ++x) {
                    if (avail[ci][x] && total[ci][t - x]) {
                        total[ci + 1][t] = 1;
                        break;
                    }
                }
            }
        }
        if (!total[b][k]) return std::nullopt;

        // Traceback: pick a per-class joiner count, then concrete members.
        Assignment pi(inst_.player_count());
        if (!guess_.center_alt.is_void()) {
            pi.assign(shape_.center, GroupRef{guess_.center_alt.activity, 0});
        }
        int t = k;
        for (int ci = b - 1; ci >= 0; --ci) {
            int picked = -1;
            for (int x = 0; x < std::min(t, k); ++x) {
                if (avail[ci][x] && total[ci][t - x]) {
                    picked = x;
                    break;
                }
            }
            if (picked < 0) throw SolverError("inconsistent traceback in star DP");
            const int solo_leaf = solo[ci][picked];
            pi.assign(shape_.leaves[solo_leaf], GroupRef{guess_.colors[ci], 0});
            int joiners = picked;
            // Members that cannot stand void must join; the rest fill up in id order.
            std::vector<int> optional_joiners;
            for (int li : classes[ci]) {
                if (li == solo_leaf) continue;
                if (traits_.can_join[li] && !traits_.can_void[li]) {
                    pi.assign(shape_.leaves[li], GroupRef{guess_.center_alt.activity, 0});
                    --joiners;
                } else if (traits_.can_join[li]) {
                    optional_joiners.push_back(li);
                }
            }
            if (joiners < 0 || joiners > static_cast<int>(optional_joiners.size())) {
                throw SolverError("inconsistent joiner count in star DP");
            }
            for (int idx = 0; idx < joiners; ++idx) {
                pi.assign(shape_.leaves[optional_joiners[idx]],
                          GroupRef{guess_.center_alt.activity, 0});
            }
            t -= picked;
        }
        return pi;
    }

    // No lone-leaf colors: every leaf joins the center or stays void.
    std::optional<Assignment> try_without_colors() const {
        const int k = guess_.center_alt.size;
        int forced = 0;
        std::vector<int> optional_joiners;
        for (size_t li = 0; li < shape_.leaves.size(); ++li) {
            const bool join = traits_.can_join[li];
            const bool stay = traits_.can_void[li];
            if (!join && !stay) return std::nullopt;
            if (join && !stay) ++forced;
            if (join && stay) optional_joiners.push_back(static_cast<int>(li));
        }
        const int needed = k - 1;
        if (forced > needed || forced + static_cast<int>(optional_joiners.size()) < needed) {
            return std::nullopt;
        }
        Assignment pi(inst_.player_count());
        if (!guess_.center_alt.is_void()) {
            pi.assign(shape_.center, GroupRef{guess_.center_alt.activity, 0});
        }
        int fill = needed - forced;
        for (size_t li = 0; li < shape_.leaves.size(); ++li) {
            const bool join = traits_.can_join[li];
            const bool stay = traits_.can_void[li];
            if (join && !stay) {
                pi.assign(shape_.leaves[li], GroupRef{guess_.center_alt.activity, 0});
            } else if (join && stay && fill > 0) {
                pi.assign(shape_.leaves[li], GroupRef{guess_.center_alt.activity, 0});
                --fill;
            }
        }
        return pi;
    }

private:
    const Instance& inst_;
    const StarShape& shape_;
    const Guess& guess_;
    LeafTraits traits_;
    std::vector<char> in_colors_;
};

// Colorings of `leaves` items with `colors` colors whose restriction to any
// `colors`-subset of positions is bijective for at least one member, built by
// seeded greedy cover over all subsets. Color permutations are applied at use
// time, so covering injectivity suffices.
std::vector<std::vector<int>> build_cover_family(int leaves, int colors, bool& exact_fallback) {
    exact_fallback = false;
    if (colors <= 1) return {std::vector<int>(leaves, 0)};

    double subset_count = 1.0;
    for (int i = 0; i < colors; ++i) subset_count *= static_cast<double>(leaves - i) / (i + 1);
    if (subset_count > 500000.0) {
        exact_fallback = true;
        return {};
    }

    std::vector<std::vector<int>> subsets;
    std::vector<int> pick(colors);
    auto gen = [&](auto&& self, int start, int depth) -> void {
        if (depth == colors) {
            subsets.push_back(pick);
            return;
        }
        for (int v = start; v < leaves; ++v) {
            pick[depth] = v;
            self(self, v + 1, depth + 1);
        }
    };
    gen(gen, 0, 0);

    std::vector<char> covered(subsets.size(), 0);
    size_t remaining = subsets.size();
    std::vector<std::vector<int>> family;
    for (std::uint64_t seed = 0; remaining > 0; ++seed) {
        if (seed > 200000) throw SolverError("coloring family construction stalled");
        std::vector<int> coloring(leaves);
        for (int l = 0; l < leaves; ++l) {
            coloring[l] = static_cast<int>(splitmix64(seed * 0x9e3779b97f4a7c15ULL + l) %
                                           static_cast<std::uint64_t>(colors));
        }
        size_t newly = 0;
        std::vector<char> hit(colors);
        for (size_t si = 0; si < subsets.size(); ++si) {
            if (covered[si]) continue;
            std::fill(hit.begin(), hit.end(), 0);
            bool injective = true;
            for (int v : subsets[si]) {
                if (hit[coloring[v]]) {
                    injective = false;
                    break;
                }
                hit[coloring[v]] = 1;
            }
            if (injective) {
                covered[si] = 1;
                ++newly;
            }
        }
        if (newly > 0) {
            family.push_back(std::move(coloring));
            remaining -= newly;
        }
    }
    return family;
}

}  // namespace

SolveOutcome solve_ns_star(const Instance& inst, const StarOptions& options) {
    const auto start_time = std::chrono::steady_clock::now();
    if (!inst.all_single_copy()) throw SolverError("solve_ns_star requires single-copy activities");
    const StarShape shape = star_shape(inst);
    const int n = inst.player_count();
    const int p = inst.activity_count();
    const int num_leaves = static_cast<int>(shape.leaves.size());

    SolveOutcome outcome;
    outcome.method = options.mode == StarOptions::Mode::Derandomized ? "star" : "star-randomized";

    Rng rng(options.seed);

    std::vector<Alternative> center_alts;
    for (int a = 0; a < p; ++a) {
        for (int k = 1; k <= n; ++k) center_alts.push_back(Alternative{a, k});
    }
    center_alts.push_back(Alternative::void_alt());

    for (const Alternative& center_alt : center_alts) {
        for (int mask = 0; mask < (1 << p); ++mask) {
            if (!center_alt.is_void() && (mask >> center_alt.activity & 1)) continue;
            Guess guess{center_alt, {}};
            for (int a = 0; a < p; ++a) {
                if (mask >> a & 1) guess.colors.push_back(a);
            }
            const int b = static_cast<int>(guess.colors.size());
            if (b > num_leaves) continue;
            if (center_alt.size - 1 + b > num_leaves) continue;

            StarGuess engine(inst, shape, guess);
            if (!engine.center_ok()) continue;
            if (b > 0 && !engine.colors_have_candidates()) continue;

            std::optional<Assignment> found;
            if (b == 0) {
                found = engine.try_without_colors();
            } else if (options.mode == StarOptions::Mode::Randomized) {
                int trials = options.trials;
                if (trials <= 0) {
                    const double hardness = std::pow(static_cast<double>(b), b);
                    trials = static_cast<int>(
                        std::ceil(hardness * std::log(1.0 / options.delta)));
                    trials = std::max(trials, 1);
                }
                std::vector<int> coloring(num_leaves);
                for (int t = 0; t < trials && !found.has_value(); ++t) {
                    for (int l = 0; l < num_leaves; ++l) coloring[l] = rng.uniform(0, b - 1);
                    found = engine.try_coloring(coloring);
                }
            } else {
                bool exact = false;
                const auto family = build_cover_family(num_leaves, b, exact);
                if (exact) {
                    // Too many subsets to cover: place the lone leaves directly.
                    std::vector<int> coloring(num_leaves, -1);
                    std::vector<int> slot(b, -1);
                    auto place = [&](auto&& self, int ci) -> bool {
                        if (ci == b) {
                            std::vector<int> full(num_leaves, 0);
                            // Unconstrained leaves take color 0; the DP only
                            // keys on who holds the colors solo.
                            for (int l = 0; l < num_leaves; ++l) full[l] = 0;
                            for (int cj = 0; cj < b; ++cj) full[slot[cj]] = cj;
                            found = engine.try_coloring(full);
                            return found.has_value();
                        }
                        for (int l = 0; l < num_leaves; ++l) {
                            bool taken = false;
                            for (int cj = 0; cj < ci; ++cj) taken |= slot[cj] == l;
                            if (taken) continue;
                            slot[ci] = l;
                            if (self(self, ci + 1)) return true;
                        }
                        return false;
                    };
                    place(place, 0);
                } else {
                    std::vector<int> perm(b);
                    for (const auto& base : family) {
                        for (int i = 0; i < b; ++i) perm[i] = i;
                        do {
                            std::vector<int> coloring(num_leaves);
                            for (int l = 0; l < num_leaves; ++l) coloring[l] = perm[base[l]];
                            found = engine.try_coloring(coloring);
                            if (found.has_value()) break;
                        } while (std::next_permutation(perm.begin(), perm.end()));
                        if (found.has_value()) break;
                    }
                }
            }

            if (found.has_value()) {
                if (!check_assignment_feasible(inst, *found) ||
                    !check_individually_rational(inst, *found).empty() ||
                    find_ns_deviation(inst, *found).has_value()) {
                    throw SolverError("star solver produced an unstable assignment");
                }
                outcome.status = SolveOutcome::Status::Found;
                outcome.assignment = *found;
                outcome.elapsed_seconds =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time)
                        .count();
                return outcome;
            }
        }
    }

    outcome.status = SolveOutcome::Status::NoneExists;
    outcome.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time).count();
    return outcome;
}

}  // namespace ggasp
