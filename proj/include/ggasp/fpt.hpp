#pragma once

#include <cstdint>

#include "ggasp/model.hpp"
#include "ggasp/oracle.hpp"

namespace ggasp {

/// Nash stability on paths with single-copy activities. For every guessed
/// subset of activities in use, a left-to-right dynamic program tracks the
/// activities consumed so far and the alternative of the group in progress;
/// adjacent groups must be separable (neither border player prefers crossing).
/// Throws SolverError off paths or with duplicated copies.
SolveOutcome solve_ns_path(const Instance& inst);

struct ComponentBound {
    int max_component_size = 6;
};

/// Nash stability on graphs with small connected components, single-copy
/// activities. Components are processed in sequence; the state is the set of
/// activities consumed so far, and each component is solved by trying every
/// mapping to its allotted activities. Deviations toward other components are
/// infeasible and therefore never tested; unused activities always are.
SolveOutcome solve_ns_components(const Instance& inst, const ComponentBound& bound = {});

/// Core stability, same component-by-component scheme with strong-blocking
/// checks inside each component against its own and the globally unused
/// activities.
SolveOutcome solve_core_components(const Instance& inst, const ComponentBound& bound = {});

struct StarOptions {
    enum class Mode { Derandomized, Randomized };

    Mode mode = Mode::Derandomized;
    std::uint64_t seed = 0;
    int trials = -1;      // Randomized: override the delta-derived trial count
    double delta = 0.01;  // Randomized: per-guess failure probability target
};

/// Nash stability on stars with single-copy activities, via color coding.
/// Guesses the center's alternative and the set of activities held by lone
/// leaves, colors the leaves, and runs the per-color counting DP; accepted
/// colorings are turned into assignments and re-verified. Derandomized mode
/// walks a coverage-complete coloring family, randomized mode samples
/// colorings from the seed.
SolveOutcome solve_ns_star(const Instance& inst, const StarOptions& options = {});

}  // namespace ggasp
