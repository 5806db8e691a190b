#pragma once

#include <string>

#include "ggasp/fpt.hpp"
#include "ggasp/model.hpp"
#include "ggasp/oracle.hpp"
#include "ggasp/tree.hpp"

namespace ggasp {

enum class Method { Auto, Oracle, Path, Star, Components, ForestCopyable };

Method method_from_string(const std::string& name);
const char* to_string(Method method);

struct SolveOptions {
    Method method = Method::Auto;
    OracleLimits oracle;
    ComponentBound components;
    StarOptions star;
};

/// Routes to the applicable solver. Auto picks by topology and copy counts:
/// copyable forests use the tree algorithms, single-copy paths/stars/small
/// components use the FPT algorithms for Nash (components also for core), and
/// everything else falls back to the exhaustive oracle. Found assignments are
/// re-verified with the checkers before they are returned.
SolveOutcome solve(const Instance& inst, Concept notion, const SolveOptions& options = {});

}  // namespace ggasp
