#pragma once

#include <string>
#include <vector>

#include "ggasp/model.hpp"

namespace ggasp::testing {

struct Pref {
    int player;
    std::string activity;
    int size;
    int rank;
};

inline Instance make_instance(int players, std::vector<std::pair<int, int>> edges,
                              std::vector<std::pair<std::string, int>> activities,
                              std::vector<Pref> prefs) {
    RawInstance raw;
    raw.players = players;
    raw.edges = std::move(edges);
    for (auto& [id, copies] : activities) raw.activities.push_back({id, copies});
    raw.prefs.resize(players);
    for (const Pref& p : prefs) {
        raw.prefs[p.player].push_back({p.activity, p.size, p.rank});
    }
    return build_instance(raw);
}

// Assignment from per-player activity names; "" means void, copy index 0
// unless given as "name:copy".
inline Assignment make_assignment(const Instance& inst, const std::vector<std::string>& slots) {
    Assignment pi(inst.player_count());
    for (int i = 0; i < static_cast<int>(slots.size()); ++i) {
        if (slots[i].empty()) continue;
        std::string name = slots[i];
        int copy = 0;
        if (const auto colon = name.find(':'); colon != std::string::npos) {
            copy = std::stoi(name.substr(colon + 1));
            name = name.substr(0, colon);
        }
        const int a = inst.activity_index(name);
        if (a < 0) throw ValidationError("test assignment names unknown activity " + name);
        pi.assign(i, GroupRef{a, copy});
    }
    return pi;
}

}  // namespace ggasp::testing
