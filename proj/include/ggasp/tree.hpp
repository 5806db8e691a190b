#pragma once

#include "ggasp/model.hpp"
#include "ggasp/oracle.hpp"

namespace ggasp {

/// Nash stability on forests where every class is copyable, by bottom-up
/// dynamic programming over rooted trees. Each table entry tracks the
/// alternative of the group containing the current subtree root and how many
/// of its members live in the subtree; child groups are either fused into the
/// parent group or sealed behind a border that neither side wants to cross.
/// Throws SolverError unless the graph is acyclic and all classes copyable.
SolveOutcome solve_ns_copyable_forest(const Instance& inst);

/// Core-stable assignment construction on forests with copyable classes.
/// Candidates come from a bottom-up greedy over rooted trees and are accepted
/// only when the polynomial core check certifies them; exhaustive enumeration
/// (within the oracle bound) backs the greedy up. Existence is guaranteed on
/// this input class, so the outcome is always Found; exhausting the search
/// without a certificate raises SolverError.
SolveOutcome solve_core_copyable_forest(const Instance& inst, const OracleLimits& limits = {});

/// Players of `vertices` as a standalone instance (ids remapped to 0..m-1,
/// preference entries clamped to the reduced player count).
Instance induced_subinstance(const Instance& inst, const std::vector<int>& vertices);

}  // namespace ggasp
