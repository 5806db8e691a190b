#include "ggasp/solve.hpp"

#include "ggasp/stability.hpp"

namespace ggasp {

Method method_from_string(const std::string& name) {
    if (name == "auto") return Method::Auto;
    if (name == "oracle") return Method::Oracle;
    if (name == "path") return Method::Path;
    if (name == "star") return Method::Star;
    if (name == "components") return Method::Components;
    if (name == "forest-copyable") return Method::ForestCopyable;
    throw ValidationError("unknown method: " + name);
}

const char* to_string(Method method) {
    switch (method) {
        case Method::Auto: return "auto";
        case Method::Oracle: return "oracle";
        case Method::Path: return "path";
        case Method::Star: return "star";
        case Method::Components: return "components";
        case Method::ForestCopyable: return "forest-copyable";
    }
    return "?";
}

namespace {

SolveOutcome all_void_outcome(const Instance& inst) {
    SolveOutcome outcome;
    outcome.status = SolveOutcome::Status::Found;
    outcome.assignment = Assignment(inst.player_count());
    outcome.method = "void";
    return outcome;
}

SolveOutcome dispatch(const Instance& inst, Concept notion, const SolveOptions& options) {
    switch (options.method) {
        case Method::Oracle:
            return oracle_find_stable(inst, notion, options.oracle);
        case Method::Path:
            if (notion != Concept::Nash) {
                throw SolverError("the path method decides Nash stability only");
            }
            return solve_ns_path(inst);
        case Method::Star:
            if (notion != Concept::Nash) {
                throw SolverError("the star method decides Nash stability only");
            }
            return solve_ns_star(inst, options.star);
        case Method::Components:
            if (notion == Concept::IR) throw SolverError("no component method for IR");
            return notion == Concept::Nash ? solve_ns_components(inst, options.components)
                                            : solve_core_components(inst, options.components);
        case Method::ForestCopyable:
            if (notion == Concept::IR) throw SolverError("no copyable-forest method for IR");
            return notion == Concept::Nash ? solve_ns_copyable_forest(inst)
                                            : solve_core_copyable_forest(inst, options.oracle);
        case Method::Auto:
            break;
    }

    // The all-void assignment is feasible and individually rational, so IR is
    // never a search problem.
    if (notion == Concept::IR) return all_void_outcome(inst);

    const Topology topo = classify_topology(inst);
    if (topo.acyclic && inst.all_copyable()) {
        return notion == Concept::Nash ? solve_ns_copyable_forest(inst)
                                        : solve_core_copyable_forest(inst, options.oracle);
    }
    if (inst.all_single_copy()) {
        if (topo.tag == TopologyTag::Path && notion == Concept::Nash) {
            return solve_ns_path(inst);
        }
        if (topo.tag == TopologyTag::Star && notion == Concept::Nash) {
            return solve_ns_star(inst, options.star);
        }
        if (topo.tag == TopologyTag::SmallComponents &&
            topo.max_component_size <= options.components.max_component_size) {
            return notion == Concept::Nash ? solve_ns_components(inst, options.components)
                                            : solve_core_components(inst, options.components);
        }
    }
    return oracle_find_stable(inst, notion, options.oracle);
}

}  // namespace

SolveOutcome solve(const Instance& inst, Concept notion, const SolveOptions& options) {
    SolveOutcome outcome = dispatch(inst, notion, options);
    if (outcome.found()) {
        const StrongBlockLimits block_limits{.max_players = 0, .unbounded = true};
        if (!is_stable(inst, *outcome.assignment, notion, block_limits)) {
            throw SolverError("solver returned an assignment the checkers reject");
        }
    }
    return outcome;
}

}  // namespace ggasp
