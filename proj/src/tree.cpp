#include "ggasp/tree.hpp"

#include <algorithm>
#include <chrono>
#include <queue>

#include "ggasp/stability.hpp"

namespace ggasp {

Instance induced_subinstance(const Instance& inst, const std::vector<int>& vertices) {
    RawInstance raw;
    raw.players = static_cast<int>(vertices.size());
    std::vector<int> local(inst.player_count(), -1);
    for (int idx = 0; idx < raw.players; ++idx) local[vertices[idx]] = idx;
    raw.activities = inst.activities();
    for (auto [i, j] : inst.edges()) {
        if (local[i] >= 0 && local[j] >= 0) raw.edges.emplace_back(local[i], local[j]);
    }
    raw.prefs.resize(raw.players);
    for (int v : vertices) {
        auto& list = raw.prefs[local[v]];
        for (int a = 0; a < inst.activity_count(); ++a) {
            for (int k = 1; k <= raw.players; ++k) {
                const int r = inst.rank(v, Alternative{a, k});
                if (r != -1) list.push_back({inst.activity(a).id, k, r});
            }
        }
    }
    return build_instance(raw);
}

namespace {

struct RootedComponent {
    std::vector<int> bfs_order;  // root first
    std::vector<int> parent;     // by global id, -1 for root
    std::vector<std::vector<int>> children;
    std::vector<int> depth;
};

RootedComponent root_component(const Instance& inst, int root) {
    const int n = inst.player_count();
    RootedComponent tree;
    tree.parent.assign(n, -1);
    tree.children.assign(n, {});
    tree.depth.assign(n, 0);
    std::vector<char> seen(n, 0);
    std::queue<int> frontier;
    frontier.push(root);
    seen[root] = 1;
    while (!frontier.empty()) {
        const int v = frontier.front();
        frontier.pop();
        tree.bfs_order.push_back(v);
        for (int w : inst.neighbors(v)) {
            if (!seen[w]) {
                seen[w] = 1;
                tree.parent[w] = v;
                tree.depth[w] = tree.depth[v] + 1;
                tree.children[v].push_back(w);
                frontier.push(w);
            }
        }
    }
    return tree;
}

// ---------------------------------------------------------------------------
// Nash stability with copyable activities
// ---------------------------------------------------------------------------

struct NsForestDp {
    const Instance& inst;
    const std::vector<int>& comp;
    int comp_size;
    int alt_count;  // p * comp_size + 1, void last
    RootedComponent tree;
    // stages[v][m]: table after merging the first m children of v.
    // Entry layout: alt * (comp_size + 1) + t.
    std::vector<std::vector<std::vector<uint8_t>>> stages;
    std::vector<int> best_single;  // per global player id

    NsForestDp(const Instance& instance, const std::vector<int>& component)
        : inst(instance), comp(component), comp_size(static_cast<int>(component.size())) {
        alt_count = inst.activity_count() * comp_size + 1;
        stages.resize(inst.player_count());
        best_single.assign(inst.player_count(), 0);
        for (int v : comp) {
            int best = 0;  // the void alternative
            for (int a = 0; a < inst.activity_count(); ++a) {
                best = std::max(best, inst.rank(v, Alternative{a, 1}));
            }
            best_single[v] = best;
        }
    }

    int void_alt() const { return alt_count - 1; }
    int alt_index(int a, int k) const { return a * comp_size + (k - 1); }
    Alternative alt_of(int idx) const {
        if (idx == void_alt()) return Alternative::void_alt();
        return Alternative{idx / comp_size, idx % comp_size + 1};
    }
    int alt_size(int idx) const { return idx == void_alt() ? 1 : idx % comp_size + 1; }
    size_t cell(int alt, int t) const { return static_cast<size_t>(alt) * (comp_size + 1) + t; }

    // Neither endpoint of a sealed border wants to cross it: v keeps (a,k)
    // rather than joining the child group, and the child keeps (b,l) rather
    // than joining v's group.
    bool border_ok(int v, int child, int alt_v, int alt_c) const {
        const Alternative av = alt_of(alt_v);
        const Alternative ac = alt_of(alt_c);
        if (!ac.is_void() && ac.size + 1 <= comp_size) {
            if (inst.rank(v, av) < inst.rank(v, Alternative{ac.activity, ac.size + 1})) return false;
        }
        if (!av.is_void() && av.size + 1 <= comp_size) {
            if (inst.rank(child, ac) < inst.rank(child, Alternative{av.activity, av.size + 1}))
                return false;
        }
        return true;
    }

    void run() {
        for (auto it = tree.bfs_order.rbegin(); it != tree.bfs_order.rend(); ++it) {
            const int v = *it;
            std::vector<uint8_t> table(static_cast<size_t>(alt_count) * (comp_size + 1), 0);
            for (int alt = 0; alt < alt_count; ++alt) {
                if (inst.rank(v, alt_of(alt)) >= best_single[v]) table[cell(alt, 1)] = 1;
            }
            stages[v].clear();
            stages[v].push_back(std::move(table));
            for (int child : tree.children[v]) {
                const auto& prev = stages[v].back();
                const auto& child_full = stages[child].back();
                std::vector<int> completed;
                for (int alt = 0; alt < alt_count; ++alt) {
                    if (child_full[cell(alt, alt_size(alt))]) completed.push_back(alt);
                }
                std::vector<uint8_t> next(static_cast<size_t>(alt_count) * (comp_size + 1), 0);
                for (int alt = 0; alt < alt_count; ++alt) {
                    const int k = alt_size(alt);
                    const bool sealable = std::any_of(
                        completed.begin(), completed.end(),
                        [&](int alt_c) { return border_ok(v, child, alt, alt_c); });
                    for (int t = 1; t <= k; ++t) {
                        bool ok = false;
                        for (int x = 1; x < t && !ok; ++x) {
                            ok = prev[cell(alt, x)] && child_full[cell(alt, t - x)];
                        }
                        if (!ok && sealable && prev[cell(alt, t)]) ok = true;
                        next[cell(alt, t)] = ok;
                    }
                }
                stages[v].push_back(std::move(next));
            }
        }
    }

    std::optional<int> accepting_alt() const {
        const int root = tree.bfs_order.front();
        const auto& full = stages[root].back();
        for (int alt = 0; alt < alt_count; ++alt) {
            if (full[cell(alt, alt_size(alt))]) return alt;
        }
        return std::nullopt;
    }

    // Traceback: group ids distinguish same-activity groups that touch.
    void rebuild(int v, int alt, int t, int stage, int gid, std::vector<int>& group_of,
                 std::vector<int>& group_activity) const {
        if (stage == 0) {
            group_of[v] = alt_of(alt).is_void() ? -1 : gid;
            return;
        }
        const int child = tree.children[v][stage - 1];
        const auto& prev = stages[v][stage - 1];
        const auto& child_full = stages[child].back();
        for (int x = 1; x < t; ++x) {
            if (prev[cell(alt, x)] && child_full[cell(alt, t - x)]) {
                rebuild(v, alt, x, stage - 1, gid, group_of, group_activity);
                rebuild(child, alt, t - x, static_cast<int>(stages[child].size()) - 1, gid,
                        group_of, group_activity);
                return;
            }
        }
        if (prev[cell(alt, t)]) {
            for (int alt_c = 0; alt_c < alt_count; ++alt_c) {
                if (!child_full[cell(alt_c, alt_size(alt_c))]) continue;
                if (!border_ok(v, child, alt, alt_c)) continue;
                rebuild(v, alt, t, stage - 1, gid, group_of, group_activity);
                int cgid = -1;
                if (!alt_of(alt_c).is_void()) {
                    cgid = static_cast<int>(group_activity.size());
                    group_activity.push_back(alt_of(alt_c).activity);
                }
                rebuild(child, alt_c, alt_size(alt_c), static_cast<int>(stages[child].size()) - 1,
                        cgid, group_of, group_activity);
                return;
            }
        }
        throw SolverError("inconsistent traceback in copyable-forest DP");
    }
};

}  // namespace

SolveOutcome solve_ns_copyable_forest(const Instance& inst) {
    const auto start = std::chrono::steady_clock::now();
    const Topology topo = classify_topology(inst);
    if (!topo.acyclic) throw SolverError("solve_ns_copyable_forest requires an acyclic graph");
    if (!inst.all_copyable()) {
        throw SolverError("solve_ns_copyable_forest requires every class to be copyable");
    }

    SolveOutcome outcome;
    outcome.method = "forest-copyable";

    const int n = inst.player_count();
    std::vector<int> group_of(n, -1);
    std::vector<int> group_activity;
    for (const auto& comp : topo.components) {
        NsForestDp dp(inst, comp);
        dp.tree = root_component(inst, comp.front());
        dp.run();
        const auto alt = dp.accepting_alt();
        if (!alt.has_value()) {
            outcome.status = SolveOutcome::Status::NoneExists;
            outcome.elapsed_seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            return outcome;
        }
        const int root = dp.tree.bfs_order.front();
        int gid = -1;
        if (!dp.alt_of(*alt).is_void()) {
            gid = static_cast<int>(group_activity.size());
            group_activity.push_back(dp.alt_of(*alt).activity);
        }
        dp.rebuild(root, *alt, dp.alt_size(*alt), static_cast<int>(dp.stages[root].size()) - 1,
                   gid, group_of, group_activity);
    }

    Assignment pi(n);
    std::vector<int> copies_used(inst.activity_count(), 0);
    std::vector<int> copy_of_group(group_activity.size(), -1);
    for (int g = 0; g < static_cast<int>(group_activity.size()); ++g) {
        copy_of_group[g] = copies_used[group_activity[g]]++;
    }
    for (int v = 0; v < n; ++v) {
        if (group_of[v] >= 0) {
            pi.assign(v, GroupRef{group_activity[group_of[v]], copy_of_group[group_of[v]]});
        }
    }

    if (!check_assignment_feasible(inst, pi) || !check_individually_rational(inst, pi).empty() ||
        find_ns_deviation(inst, pi).has_value()) {
        throw SolverError("copyable-forest DP produced an unstable assignment");
    }
    outcome.status = SolveOutcome::Status::Found;
    outcome.assignment = pi;
    outcome.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return outcome;
}

// ---------------------------------------------------------------------------
// Core stability with copyable activities
// ---------------------------------------------------------------------------

namespace {

bool core_certified(const Instance& sub, const Assignment& pi) {
    return check_assignment_feasible(sub, pi) && check_individually_rational(sub, pi).empty() &&
           !check_core_forest(sub, pi).has_value();
}

// Bottom-up commit: the shallowest unassigned vertex repeatedly claims the
// best alternative it can realize with willing (individually rational)
// partners in its remaining subtree.
Assignment greedy_core_candidate(const Instance& sub, int root) {
    const int m = sub.player_count();
    RootedComponent tree = root_component(sub, root);

    std::vector<char> remaining(m, 1);
    Assignment out(m);
    std::vector<int> copies_used(sub.activity_count(), 0);
    int left = m;
    while (left > 0) {
        int top = -1;
        for (int v : tree.bfs_order) {
            if (remaining[v]) {
                top = v;
                break;
            }
        }
        // Vertices reachable from top through unassigned players.
        std::vector<char> avail(m, 0);
        std::queue<int> frontier;
        frontier.push(top);
        avail[top] = 1;
        int avail_count = 0;
        while (!frontier.empty()) {
            const int v = frontier.front();
            frontier.pop();
            ++avail_count;
            for (int w : sub.neighbors(v)) {
                if (remaining[w] && !avail[w]) {
                    avail[w] = 1;
                    frontier.push(w);
                }
            }
        }

        int best_rank = 0;
        Alternative best = Alternative::void_alt();
        for (int a = 0; a < sub.activity_count(); ++a) {
            for (int k = 1; k <= avail_count; ++k) {
                const Alternative alt{a, k};
                const int r = sub.rank(top, alt);
                if (r <= best_rank || r < 0) continue;
                // Reachable through players who all accept (a,k).
                std::vector<char> eligible(m, 0);
                std::queue<int> grow;
                if (sub.rank(top, alt) >= 0) {
                    grow.push(top);
                    eligible[top] = 1;
                }
                int count = 0;
                while (!grow.empty()) {
                    const int v = grow.front();
                    grow.pop();
                    ++count;
                    for (int w : sub.neighbors(v)) {
                        if (avail[w] && !eligible[w] && sub.rank(w, alt) >= 0) {
                            eligible[w] = 1;
                            grow.push(w);
                        }
                    }
                }
                if (count >= k) {
                    best_rank = r;
                    best = alt;
                }
            }
        }

        std::vector<int> members{top};
        if (!best.is_void()) {
            // First (size) vertices in BFS order through eligible players.
            std::vector<char> eligible(m, 0);
            std::queue<int> grow;
            grow.push(top);
            eligible[top] = 1;
            std::vector<int> reach;
            while (!grow.empty()) {
                const int v = grow.front();
                grow.pop();
                reach.push_back(v);
                for (int w : sub.neighbors(v)) {
                    if (avail[w] && !eligible[w] && sub.rank(w, best) >= 0) {
                        eligible[w] = 1;
                        grow.push(w);
                    }
                }
            }
            members.assign(reach.begin(), reach.begin() + best.size);
            const GroupRef group{best.activity, copies_used[best.activity]++};
            for (int v : members) out.assign(v, group);
        }
        for (int v : members) {
            remaining[v] = 0;
            --left;
        }
    }
    return out;
}

Assignment solve_core_component(const Instance& sub, const OracleLimits& limits) {
    for (int root = 0; root < sub.player_count(); ++root) {
        Assignment candidate = greedy_core_candidate(sub, root);
        if (core_certified(sub, candidate)) return candidate;
    }
    if (!limits.unbounded && sub.player_count() > limits.max_players) {
        throw SolverError(
            "greedy core search failed and the component exceeds the exhaustive-search bound");
    }
    std::optional<Assignment> found;
    enumerate_feasible_assignments(
        sub,
        [&](const Assignment& pi) {
            if (check_individually_rational(sub, pi).empty() &&
                !check_core_forest(sub, pi).has_value()) {
                found = pi;
                return false;
            }
            return true;
        },
        OracleLimits{sub.player_count(), true});
    if (!found.has_value()) {
        throw SolverError("exhausted search without a core stable assignment on a copyable forest");
    }
    return *found;
}

}  // namespace

SolveOutcome solve_core_copyable_forest(const Instance& inst, const OracleLimits& limits) {
    const auto start = std::chrono::steady_clock::now();
    const Topology topo = classify_topology(inst);
    if (!topo.acyclic) throw SolverError("solve_core_copyable_forest requires an acyclic graph");
    if (!inst.all_copyable()) {
        throw SolverError("solve_core_copyable_forest requires every class to be copyable");
    }

    const int n = inst.player_count();
    Assignment pi(n);
    std::vector<int> copies_used(inst.activity_count(), 0);
    for (const auto& comp : topo.components) {
        const Instance sub = induced_subinstance(inst, comp);
        const Assignment local = solve_core_component(sub, limits);
        std::map<GroupRef, GroupRef> remap;
        for (const auto& [group, members] : local.groups()) {
            remap[group] = GroupRef{group.activity, copies_used[group.activity]++};
        }
        for (int idx = 0; idx < sub.player_count(); ++idx) {
            const auto& slot = local.slot(idx);
            if (slot.has_value()) pi.assign(comp[idx], remap.at(*slot));
        }
    }

    if (!check_assignment_feasible(inst, pi) || !check_individually_rational(inst, pi).empty() ||
        check_core_forest(inst, pi).has_value()) {
        throw SolverError("core construction failed certification on a copyable forest");
    }
    SolveOutcome outcome;
    outcome.status = SolveOutcome::Status::Found;
    outcome.assignment = pi;
    outcome.method = "forest-copyable";
    outcome.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return outcome;
}

}  // namespace ggasp
