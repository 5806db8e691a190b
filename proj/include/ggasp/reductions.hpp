#pragma once

#include <array>
#include <string>
#include <vector>

#include "ggasp/io.hpp"
#include "ggasp/model.hpp"
#include "ggasp/oracle.hpp"

namespace ggasp {

/// Properly edge-colored path: edge i joins path vertices i and i+1. The
/// coloring must give adjacent edges distinct colors and use every color.
struct RainbowPathSource {
    int vertices = 0;
    std::vector<std::string> edge_colors;
    int k = 1;
};

/// Bipartite minimum-maximal-matching source; edges pair (u-index, v-index).
struct MmmSource {
    int u = 0;
    int v = 0;
    std::vector<std::pair<int, int>> edges;
    int k = 1;
};

/// (3,B2)-SAT formula: clauses of exactly three signed 1-based literals;
/// every variable occurs exactly twice positively and twice negatively.
struct Sat3B2Source {
    int variables = 0;
    std::vector<std::array<int, 3>> clauses;
};

struct ReductionSource {
    enum class Kind { RainbowPath, Mmm, Sat3B2 };

    Kind kind = Kind::RainbowPath;
    RainbowPathSource rainbow;
    MmmSource mmm;
    Sat3B2Source sat;

    static ReductionSource from_json(const Json& j);
    Json to_json() const;
};

/// Throws ValidationError when a source violates its structural invariants.
void validate_source(const ReductionSource& source);

enum class Fixture { EmptyCore, Stalker };

/// The two hand-built example games. `copies` scales every class's copy count
/// (the stalker game with copies=2 is the copyable variant).
Instance fixture(Fixture which, int copies = 1);

Instance generate_from_rainbow(const RainbowPathSource& src, Concept notion);
Instance generate_from_mmm(const MmmSource& src, Concept notion);
Instance generate_from_3sat(const Sat3B2Source& src, Concept notion);
Instance generate(const ReductionSource& source, Concept notion);

/// Exhaustive source solvers, desk scale (<= 12 edges / variables).
int max_rainbow_matching(const RainbowPathSource& src);
int min_maximal_matching(const MmmSource& src);
bool satisfiable(const Sat3B2Source& src, std::vector<bool>* model = nullptr);

/// Yes-verdict of the decision problem the reduction encodes.
bool source_yes(const ReductionSource& source);

/// Stable assignments built per the forward direction of each construction;
/// callers certify them with the checkers. Throws for no-sources.
Assignment rainbow_witness(const RainbowPathSource& src, Concept notion, const Instance& gen);
Assignment mmm_witness(const MmmSource& src, Concept notion, const Instance& gen);
Assignment sat_witness(const Sat3B2Source& src, Concept notion, const Instance& gen);

/// True iff the source verdict matches stable-outcome existence on the
/// generated instance. Yes-sources are settled constructively (witness +
/// checker); no-sources need an exhaustive or FPT decision, so paths with a
/// no-core-source and big gadgets raise BoundError, as do unsatisfiable
/// formulas (their reverse direction is not desk-checkable).
bool verify_reduction(const ReductionSource& source, Concept notion,
                      const OracleLimits& limits = {});

}  // namespace ggasp
