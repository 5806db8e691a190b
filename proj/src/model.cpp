#include "ggasp/model.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <sstream>

namespace ggasp {

namespace {

std::string describe(const Alternative& x) {
    std::ostringstream out;
    if (x.is_void()) {
        out << "(void,1)";
    } else {
        out << "(#" << x.activity << "," << x.size << ")";
    }
    return out.str();
}

}  // namespace

int Instance::activity_index(const std::string& id) const {
    for (int a = 0; a < activity_count(); ++a) {
        if (activities_[a].id == id) return a;
    }
    return -1;
}

int Instance::rank(int player, Alternative x) const {
    if (player < 0 || player >= n_) throw ValidationError("player id out of range");
    if (x.size < 1 || x.size > n_) throw ValidationError("alternative size out of range: " + describe(x));
    if (x.is_void()) {
        if (x.size != 1) throw ValidationError("void alternative must have size 1");
        return 0;
    }
    if (x.activity < 0 || x.activity >= activity_count()) {
        throw ValidationError("unknown activity in alternative: " + describe(x));
    }
    return rank_table_[player][x.activity + 1][x.size];
}

Comparison Instance::prefers(int player, Alternative x, Alternative y) const {
    const int rx = rank(player, x);
    const int ry = rank(player, y);
    if (rx > ry) return Comparison::Strict;
    if (rx == ry) return Comparison::Indifferent;
    return Comparison::Worse;
}

bool Instance::all_copyable() const {
    return std::all_of(activities_.begin(), activities_.end(),
                       [this](const ActivityClass& a) { return a.copies >= n_; });
}

bool Instance::all_single_copy() const {
    return std::all_of(activities_.begin(), activities_.end(),
                       [](const ActivityClass& a) { return a.copies == 1; });
}

Instance build_instance(const RawInstance& spec) {
    Instance inst;
    if (spec.players < 1) throw ValidationError("instance needs at least one player");
    inst.n_ = spec.players;

    std::set<std::string> seen_ids;
    for (const ActivityClass& a : spec.activities) {
        if (a.id.empty()) throw ValidationError("activity class id must be non-empty");
        if (!seen_ids.insert(a.id).second) throw ValidationError("duplicate activity class id: " + a.id);
        if (a.copies < 1) throw ValidationError("activity class " + a.id + " has copies < 1");
    }
    inst.activities_ = spec.activities;

    std::set<std::pair<int, int>> seen_edges;
    for (auto [i, j] : spec.edges) {
        if (i == j) throw ValidationError("self-loop edge on player " + std::to_string(i));
        if (i < 0 || i >= inst.n_ || j < 0 || j >= inst.n_) {
            throw ValidationError("edge endpoint out of range");
        }
        seen_edges.insert({std::min(i, j), std::max(i, j)});
    }
    inst.edges_.assign(seen_edges.begin(), seen_edges.end());

    inst.adj_.assign(inst.n_, {});
    inst.adj_matrix_.assign(static_cast<size_t>(inst.n_) * inst.n_, false);
    for (auto [i, j] : inst.edges_) {
        inst.adj_[i].push_back(j);
        inst.adj_[j].push_back(i);
        inst.adj_matrix_[static_cast<size_t>(i) * inst.n_ + j] = true;
        inst.adj_matrix_[static_cast<size_t>(j) * inst.n_ + i] = true;
    }
    for (auto& nbrs : inst.adj_) std::sort(nbrs.begin(), nbrs.end());

    if (!spec.prefs.empty() && static_cast<int>(spec.prefs.size()) != inst.n_) {
        throw ValidationError("prefs must list one entry per player");
    }
    const int p = inst.activity_count();
    inst.rank_table_.assign(inst.n_, std::vector<std::vector<int>>(
                                         p + 1, std::vector<int>(inst.n_ + 1, -1)));
    for (int i = 0; i < inst.n_; ++i) {
        inst.rank_table_[i][0][1] = 0;  // void
        if (spec.prefs.empty()) continue;
        std::set<std::pair<int, int>> listed;
        for (const RawInstance::PrefEntry& e : spec.prefs[i]) {
            const int a = inst.activity_index(e.activity);
            if (a < 0) throw ValidationError("preference entry for unknown activity: " + e.activity);
            if (e.size < 1 || e.size > inst.n_) {
                throw ValidationError("preference entry size out of range for activity " + e.activity);
            }
            if (!listed.insert({a, e.size}).second) {
                throw ValidationError("duplicate preference entry for activity " + e.activity);
            }
            inst.rank_table_[i][a + 1][e.size] = e.rank;
        }
    }
    inst.provenance_ = spec.provenance;
    return inst;
}

bool is_feasible_coalition(const Instance& inst, const Coalition& coalition) {
    if (coalition.empty()) throw ValidationError("coalition must be non-empty");
    const int n = inst.player_count();
    std::vector<bool> member(n, false);
    for (int i : coalition) {
        if (i < 0 || i >= n) throw ValidationError("coalition member out of range");
        member[i] = true;
    }
    std::vector<bool> seen(n, false);
    std::queue<int> frontier;
    frontier.push(coalition.front());
    seen[coalition.front()] = true;
    int reached = 0;
    while (!frontier.empty()) {
        const int v = frontier.front();
        frontier.pop();
        ++reached;
        for (int w : inst.neighbors(v)) {
            if (member[w] && !seen[w]) {
                seen[w] = true;
                frontier.push(w);
            }
        }
    }
    return reached == static_cast<int>(coalition.size());
}

std::map<GroupRef, std::vector<int>> Assignment::groups() const {
    std::map<GroupRef, std::vector<int>> out;
    for (int i = 0; i < size(); ++i) {
        if (slots_[i].has_value()) out[*slots_[i]].push_back(i);
    }
    return out;
}

Alternative current_alternative(const Instance& inst, const Assignment& pi, int player) {
    const auto& slot = pi.slot(player);
    if (!slot.has_value()) return Alternative::void_alt();
    int size = 0;
    for (int j = 0; j < inst.player_count(); ++j) {
        if (pi.slot(j) == slot) ++size;
    }
    return Alternative{slot->activity, size};
}

void validate_assignment(const Instance& inst, const Assignment& pi) {
    if (pi.size() != inst.player_count()) {
        throw ValidationError("assignment has wrong number of players");
    }
    for (int i = 0; i < pi.size(); ++i) {
        const auto& slot = pi.slot(i);
        if (!slot.has_value()) continue;
        if (slot->activity < 0 || slot->activity >= inst.activity_count()) {
            throw ValidationError("assignment uses unknown activity");
        }
        if (slot->copy < 0 || slot->copy >= inst.copies(slot->activity)) {
            throw ValidationError("assignment copy index out of range for activity " +
                                  inst.activity(slot->activity).id);
        }
    }
}

Topology classify_topology(const Instance& inst) {
    const int n = inst.player_count();
    Topology topo;
    std::vector<int> component_of(n, -1);
    for (int start = 0; start < n; ++start) {
        if (component_of[start] >= 0) continue;
        std::vector<int> comp;
        std::queue<int> frontier;
        frontier.push(start);
        component_of[start] = static_cast<int>(topo.components.size());
        while (!frontier.empty()) {
            const int v = frontier.front();
            frontier.pop();
            comp.push_back(v);
            for (int w : inst.neighbors(v)) {
                if (component_of[w] < 0) {
                    component_of[w] = component_of[start];
                    frontier.push(w);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        topo.components.push_back(std::move(comp));
    }
    topo.component_count = static_cast<int>(topo.components.size());
    for (const auto& comp : topo.components) {
        topo.max_component_size = std::max(topo.max_component_size, static_cast<int>(comp.size()));
    }
    topo.connected = topo.component_count == 1;
    const int edge_count = static_cast<int>(inst.edges().size());
    topo.acyclic = edge_count == n - topo.component_count;

    if (!topo.connected) {
        topo.tag = TopologyTag::SmallComponents;
        return topo;
    }
    if (!topo.acyclic) {
        topo.tag = TopologyTag::General;
        return topo;
    }
    int max_degree = 0;
    int high_degree_nodes = 0;
    for (int v = 0; v < n; ++v) {
        const int d = static_cast<int>(inst.neighbors(v).size());
        max_degree = std::max(max_degree, d);
        if (d >= 2) ++high_degree_nodes;
    }
    if (max_degree <= 2) {
        topo.tag = TopologyTag::Path;
    } else if (high_degree_nodes == 1) {
        topo.tag = TopologyTag::Star;
    } else {
        topo.tag = TopologyTag::Forest;
    }
    return topo;
}

const char* to_string(TopologyTag tag) {
    switch (tag) {
        case TopologyTag::Path: return "path";
        case TopologyTag::Star: return "star";
        case TopologyTag::Forest: return "forest";
        case TopologyTag::SmallComponents: return "small-components";
        case TopologyTag::General: return "general";
    }
    return "?";
}

const char* to_string(Comparison cmp) {
    switch (cmp) {
        case Comparison::Strict: return "strict";
        case Comparison::Indifferent: return "indifferent";
        case Comparison::Worse: return "worse";
    }
    return "?";
}

}  // namespace ggasp
