#pragma once

#include <functional>
#include <optional>
#include <string>

#include "ggasp/model.hpp"
#include "ggasp/stability.hpp"

namespace ggasp {

struct OracleLimits {
    int max_players = 10;
    bool unbounded = false;
};

/// Reads GGASP_MAX_ORACLE_N if set, otherwise the default bound.
OracleLimits oracle_limits_from_env();

struct SolveOutcome {
    enum class Status { Found, NoneExists };

    Status status = Status::NoneExists;
    std::optional<Assignment> assignment;
    std::string method;
    double elapsed_seconds = 0.0;

    bool found() const { return status == Status::Found; }
};

/// Visits every feasible assignment exactly once, reduced by copy symmetry:
/// copies of a class are numbered in first-use order along the player scan,
/// so permuting copy indices never produces a second visit. The visitor
/// returns false to stop early. Enumeration order is deterministic, starting
/// from the all-void assignment.
///
/// Throws BoundError when the instance exceeds the configured player bound.
void enumerate_feasible_assignments(const Instance& inst,
                                    const std::function<bool(const Assignment&)>& visit,
                                    const OracleLimits& limits = {});

/// Exhaustive search for a stable assignment under the given notion.
SolveOutcome oracle_find_stable(const Instance& inst, Concept notion,
                                const OracleLimits& limits = {});

/// Number of stable assignments modulo copy symmetry.
long long oracle_count_stable(const Instance& inst, Concept notion,
                              const OracleLimits& limits = {});

}  // namespace ggasp
