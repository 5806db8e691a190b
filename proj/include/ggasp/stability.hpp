#pragma once

#include <optional>
#include <vector>

#include "ggasp/model.hpp"

namespace ggasp {

enum class Concept { Nash, Core, IR };

const char* to_string(Concept notion);

/// A single-player move to an existing or unused group that the player
/// strictly prefers and that keeps the target group connected.
struct Deviation {
    int player = 0;
    GroupRef target;
};

/// A connected coalition that, together with one copy of an activity, strongly
/// blocks an assignment: the copy's current group is contained in the
/// coalition and every member strictly prefers (activity, |coalition|).
struct BlockingCertificate {
    Coalition coalition;
    GroupRef target;
};

struct StabilityReport {
    bool feasible = false;
    std::vector<int> ir_violations;
    std::optional<Deviation> ns_witness;
    std::optional<BlockingCertificate> core_witness;

    bool individually_rational() const { return ir_violations.empty(); }
};

/// True iff every non-empty group is connected. Throws ValidationError on
/// malformed slots (unknown activity, copy index out of range).
bool check_assignment_feasible(const Instance& inst, const Assignment& pi);

/// Players engaged in an activity they rank strictly below staying alone.
std::vector<int> check_individually_rational(const Instance& inst, const Assignment& pi);

/// First NS-deviation in scan order (ascending player, class, copy), if any.
/// Expects a feasible, individually rational assignment.
std::optional<Deviation> find_ns_deviation(const Instance& inst, const Assignment& pi);

struct StrongBlockLimits {
    int max_players = 20;  // connected-subset enumeration is exponential
    bool unbounded = false;
};

/// Exhaustive strongly-blocking-coalition search over connected subsets.
/// Returns the lexicographically smallest blocking coalition (then smallest
/// class id, then copy). Expects a feasible, individually rational assignment.
std::optional<BlockingCertificate> find_strong_block(const Instance& inst, const Assignment& pi,
                                                     const StrongBlockLimits& limits = {});

/// Polynomial core check for forests. For each alternative (a,k) it collects
/// the players strictly preferring (a,k) to their current alternative and
/// looks for a big-enough component of that set satisfying the copy
/// containment rule; a witness of size exactly k is carved out by pruning
/// leaves. Throws SolverError if the graph has a cycle.
std::optional<BlockingCertificate> check_core_forest(const Instance& inst, const Assignment& pi);

/// Full report for one notion. Witness search runs only when the assignment
/// is feasible and individually rational. Core witnesses come from
/// check_core_forest on forests and from find_strong_block otherwise.
StabilityReport analyze_assignment(const Instance& inst, const Assignment& pi, Concept notion,
                                   const StrongBlockLimits& limits = {});

bool is_stable(const Instance& inst, const Assignment& pi, Concept notion,
               const StrongBlockLimits& limits = {});

}  // namespace ggasp
