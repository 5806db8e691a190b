#pragma once

#include <string>

#include <json.hpp>

#include "ggasp/model.hpp"
#include "ggasp/oracle.hpp"
#include "ggasp/stability.hpp"

namespace ggasp {

using Json = nlohmann::json;

/// Parses `{"players": n, "edges": [[i,j],...], "activities": [{"id":..,
/// "copies":..},...], "prefs": [[{"activity":..,"size":..,"rank":..},...],...]}`.
/// Player ids are 0-based; a "provenance" member is carried through untouched.
RawInstance raw_instance_from_json(const Json& j);
Instance instance_from_json(const Json& j);
Json instance_to_json(const Instance& inst);

/// Parses `{"assignment": [{"player":0,"activity":"a","copy":0},
/// {"player":1,"activity":null},...]}`; null activity means void, the copy
/// index defaults to 0. Every player must appear exactly once.
Assignment assignment_from_json(const Json& j, const Instance& inst);
Json assignment_to_json(const Assignment& pi, const Instance& inst);

Json report_to_json(const StabilityReport& report, const Instance& inst, Concept notion);
Json outcome_to_json(const SolveOutcome& outcome, const Instance& inst);

/// Reads and parses a JSON file; IO and parse failures become ValidationError.
Json load_json(const std::string& path);
void save_json(const std::string& path, const Json& j);

Instance load_instance(const std::string& path);
Assignment load_assignment(const std::string& path, const Instance& inst);

}  // namespace ggasp
