#include "ggasp/io.hpp"

#include <fstream>
#include <sstream>

namespace ggasp {

namespace {

int require_int(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer()) {
        throw ValidationError(std::string("missing or non-integer field: ") + key);
    }
    return j[key].get<int>();
}

}  // namespace

RawInstance raw_instance_from_json(const Json& j) {
    if (!j.is_object()) throw ValidationError("instance file must hold a JSON object");
    RawInstance raw;
    raw.players = require_int(j, "players");
    if (j.contains("edges")) {
        if (!j["edges"].is_array()) throw ValidationError("edges must be an array");
        for (const Json& e : j["edges"]) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
                !e[1].is_number_integer()) {
                throw ValidationError("each edge must be a pair of player ids");
            }
            raw.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
    }
    if (j.contains("activities")) {
        if (!j["activities"].is_array()) throw ValidationError("activities must be an array");
        for (const Json& a : j["activities"]) {
            if (!a.is_object() || !a.contains("id") || !a["id"].is_string()) {
                throw ValidationError("each activity needs a string id");
            }
            ActivityClass cls;
            cls.id = a["id"].get<std::string>();
            cls.copies = a.contains("copies") ? require_int(a, "copies") : 1;
            raw.activities.push_back(std::move(cls));
        }
    }
    if (j.contains("prefs")) {
        if (!j["prefs"].is_array()) throw ValidationError("prefs must be an array");
        for (const Json& row : j["prefs"]) {
            if (!row.is_array()) throw ValidationError("each player's prefs must be an array");
            std::vector<RawInstance::PrefEntry> entries;
            for (const Json& e : row) {
                if (!e.is_object() || !e.contains("activity") || !e["activity"].is_string()) {
                    throw ValidationError("each preference entry needs an activity id");
                }
                RawInstance::PrefEntry entry;
                entry.activity = e["activity"].get<std::string>();
                entry.size = require_int(e, "size");
                entry.rank = require_int(e, "rank");
                entries.push_back(std::move(entry));
            }
            raw.prefs.push_back(std::move(entries));
        }
    }
    if (j.contains("provenance")) raw.provenance = j["provenance"].dump();
    return raw;
}

Instance instance_from_json(const Json& j) { return build_instance(raw_instance_from_json(j)); }

Json instance_to_json(const Instance& inst) {
    Json j;
    j["players"] = inst.player_count();
    j["edges"] = Json::array();
    for (auto [a, b] : inst.edges()) j["edges"].push_back({a, b});
    j["activities"] = Json::array();
    for (const ActivityClass& cls : inst.activities()) {
        j["activities"].push_back({{"id", cls.id}, {"copies", cls.copies}});
    }
    j["prefs"] = Json::array();
    for (int i = 0; i < inst.player_count(); ++i) {
        Json row = Json::array();
        for (int a = 0; a < inst.activity_count(); ++a) {
            for (int k = 1; k <= inst.player_count(); ++k) {
                const int r = inst.rank(i, Alternative{a, k});
                if (r != -1) {
                    row.push_back({{"activity", inst.activity(a).id}, {"size", k}, {"rank", r}});
                }
            }
        }
        j["prefs"].push_back(std::move(row));
    }
    if (!inst.provenance().empty()) {
        j["provenance"] = Json::parse(inst.provenance(), nullptr, false);
        if (j["provenance"].is_discarded()) j["provenance"] = inst.provenance();
    }
    return j;
}

Assignment assignment_from_json(const Json& j, const Instance& inst) {
    if (!j.is_object() || !j.contains("assignment") || !j["assignment"].is_array()) {
        throw ValidationError("assignment file needs an \"assignment\" array");
    }
    Assignment pi(inst.player_count());
    std::vector<char> seen(inst.player_count(), 0);
    for (const Json& e : j["assignment"]) {
        if (!e.is_object()) throw ValidationError("assignment entries must be objects");
        const int player = require_int(e, "player");
        if (player < 0 || player >= inst.player_count()) {
            throw ValidationError("assignment player id out of range");
        }
        if (seen[player]) throw ValidationError("player listed twice in assignment");
        seen[player] = 1;
        if (!e.contains("activity") || e["activity"].is_null()) continue;
        if (!e["activity"].is_string()) {
            throw ValidationError("assignment activity must be a string or null");
        }
        const int a = inst.activity_index(e["activity"].get<std::string>());
        if (a < 0) throw ValidationError("assignment names unknown activity");
        const int copy = e.contains("copy") ? require_int(e, "copy") : 0;
        pi.assign(player, GroupRef{a, copy});
    }
    for (int i = 0; i < inst.player_count(); ++i) {
        if (!seen[i]) throw ValidationError("assignment misses player " + std::to_string(i));
    }
    validate_assignment(inst, pi);
    return pi;
}

Json assignment_to_json(const Assignment& pi, const Instance& inst) {
    Json arr = Json::array();
    for (int i = 0; i < pi.size(); ++i) {
        Json e{{"player", i}};
        const auto& slot = pi.slot(i);
        if (slot.has_value()) {
            e["activity"] = inst.activity(slot->activity).id;
            e["copy"] = slot->copy;
        } else {
            e["activity"] = nullptr;
        }
        arr.push_back(std::move(e));
    }
    return Json{{"assignment", std::move(arr)}};
}

Json report_to_json(const StabilityReport& report, const Instance& inst, Concept notion) {
    Json j;
    j["concept"] = to_string(notion);
    j["feasible"] = report.feasible;
    j["ir_violations"] = report.ir_violations;
    bool stable = report.feasible && report.individually_rational();
    if (notion == Concept::Nash) stable = stable && !report.ns_witness.has_value();
    if (notion == Concept::Core) stable = stable && !report.core_witness.has_value();
    j["stable"] = stable;
    if (report.ns_witness.has_value()) {
        j["ns_witness"] = {{"player", report.ns_witness->player},
                           {"activity", inst.activity(report.ns_witness->target.activity).id},
                           {"copy", report.ns_witness->target.copy}};
    } else if (notion == Concept::Nash) {
        j["ns_witness"] = nullptr;
    }
    if (report.core_witness.has_value()) {
        j["core_witness"] = {{"coalition", report.core_witness->coalition},
                             {"activity", inst.activity(report.core_witness->target.activity).id},
                             {"copy", report.core_witness->target.copy}};
    } else if (notion == Concept::Core) {
        j["core_witness"] = nullptr;
    }
    return j;
}

Json outcome_to_json(const SolveOutcome& outcome, const Instance& inst) {
    Json j;
    j["status"] = outcome.found() ? "found" : "none-exists";
    j["method"] = outcome.method;
    j["elapsed_seconds"] = outcome.elapsed_seconds;
    if (outcome.assignment.has_value()) {
        j.update(assignment_to_json(*outcome.assignment, inst));
    }
    return j;
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    Json j = Json::parse(in, nullptr, false);
    if (j.is_discarded()) throw ValidationError("malformed JSON in " + path);
    return j;
}

void save_json(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write " + path);
    out << j.dump(2) << '\n';
}

Instance load_instance(const std::string& path) { return instance_from_json(load_json(path)); }

Assignment load_assignment(const std::string& path, const Instance& inst) {
    return assignment_from_json(load_json(path), inst);
}

}  // namespace ggasp
