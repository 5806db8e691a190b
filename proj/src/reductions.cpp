#include "ggasp/reductions.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "ggasp/fpt.hpp"
#include "ggasp/stability.hpp"

namespace ggasp {

// ---------------------------------------------------------------------------
// Sources
// ---------------------------------------------------------------------------

ReductionSource ReductionSource::from_json(const Json& j) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
        throw ValidationError("reduction source needs a \"type\" field");
    }
    const std::string type = j["type"].get<std::string>();
    ReductionSource src;
    if (type == "rainbow_path") {
        src.kind = Kind::RainbowPath;
        src.rainbow.vertices = j.value("vertices", 0);
        src.rainbow.k = j.value("k", 1);
        if (j.contains("edge_colors") && j["edge_colors"].is_array()) {
            for (const Json& c : j["edge_colors"]) {
                if (!c.is_string()) throw ValidationError("edge colors must be strings");
                src.rainbow.edge_colors.push_back(c.get<std::string>());
            }
        }
    } else if (type == "mmm") {
        src.kind = Kind::Mmm;
        src.mmm.u = j.value("u", 0);
        src.mmm.v = j.value("v", 0);
        src.mmm.k = j.value("k", 1);
        if (j.contains("edges") && j["edges"].is_array()) {
            for (const Json& e : j["edges"]) {
                if (!e.is_array() || e.size() != 2) {
                    throw ValidationError("mmm edges must be [u,v] pairs");
                }
                src.mmm.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
            }
        }
    } else if (type == "sat3b2") {
        src.kind = Kind::Sat3B2;
        src.sat.variables = j.value("variables", 0);
        if (j.contains("clauses") && j["clauses"].is_array()) {
            for (const Json& c : j["clauses"]) {
                if (!c.is_array() || c.size() != 3) {
                    throw ValidationError("each clause must list exactly 3 literals");
                }
                src.sat.clauses.push_back({c[0].get<int>(), c[1].get<int>(), c[2].get<int>()});
            }
        }
    } else {
        throw ValidationError("unknown reduction source type: " + type);
    }
    validate_source(src);
    return src;
}

Json ReductionSource::to_json() const {
    Json j;
    switch (kind) {
        case Kind::RainbowPath:
            j["type"] = "rainbow_path";
            j["vertices"] = rainbow.vertices;
            j["edge_colors"] = rainbow.edge_colors;
            j["k"] = rainbow.k;
            break;
        case Kind::Mmm:
            j["type"] = "mmm";
            j["u"] = mmm.u;
            j["v"] = mmm.v;
            j["edges"] = Json::array();
            for (auto [a, b] : mmm.edges) j["edges"].push_back({a, b});
            j["k"] = mmm.k;
            break;
        case Kind::Sat3B2:
            j["type"] = "sat3b2";
            j["variables"] = sat.variables;
            j["clauses"] = Json::array();
            for (const auto& c : sat.clauses) j["clauses"].push_back({c[0], c[1], c[2]});
            break;
    }
    return j;
}

namespace {

std::vector<std::string> color_list(const RainbowPathSource& src) {
    std::vector<std::string> colors;
    for (const std::string& c : src.edge_colors) {
        if (std::find(colors.begin(), colors.end(), c) == colors.end()) colors.push_back(c);
    }
    return colors;
}

}  // namespace

void validate_source(const ReductionSource& source) {
    switch (source.kind) {
        case ReductionSource::Kind::RainbowPath: {
            const auto& s = source.rainbow;
            if (s.vertices < 2) throw ValidationError("rainbow path needs at least 2 vertices");
            if (static_cast<int>(s.edge_colors.size()) != s.vertices - 1) {
                throw ValidationError("a path on m vertices has m-1 edges");
            }
            for (const std::string& c : s.edge_colors) {
                if (c.empty()) throw ValidationError("empty color name");
            }
            for (size_t i = 0; i + 1 < s.edge_colors.size(); ++i) {
                if (s.edge_colors[i] == s.edge_colors[i + 1]) {
                    throw ValidationError("adjacent edges share a color; coloring must be proper");
                }
            }
            const int q = static_cast<int>(color_list(s).size());
            if (s.k < 1 || s.k > q) throw ValidationError("rainbow k must lie in [1, #colors]");
            break;
        }
        case ReductionSource::Kind::Mmm: {
            const auto& s = source.mmm;
            if (s.u < 1 || s.v < 1) throw ValidationError("mmm needs non-empty sides");
            if (s.edges.empty()) throw ValidationError("mmm needs at least one edge");
            std::set<std::pair<int, int>> seen;
            for (auto [u, v] : s.edges) {
                if (u < 0 || u >= s.u || v < 0 || v >= s.v) {
                    throw ValidationError("mmm edge endpoint out of range");
                }
                if (!seen.insert({u, v}).second) throw ValidationError("duplicate mmm edge");
            }
            if (s.k < 1 || s.k > static_cast<int>(s.edges.size())) {
                throw ValidationError("mmm k must lie in [1, |E|]");
            }
            break;
        }
        case ReductionSource::Kind::Sat3B2: {
            const auto& s = source.sat;
            if (s.variables < 1) throw ValidationError("formula needs variables");
            std::vector<int> pos(s.variables + 1, 0), neg(s.variables + 1, 0);
            for (const auto& clause : s.clauses) {
                for (int lit : clause) {
                    const int var = std::abs(lit);
                    if (lit == 0 || var > s.variables) {
                        throw ValidationError("literal out of range");
                    }
                    (lit > 0 ? pos : neg)[var]++;
                }
            }
            for (int v = 1; v <= s.variables; ++v) {
                if (pos[v] != 2 || neg[v] != 2) {
                    throw ValidationError(
                        "every variable must occur exactly twice positively and twice negatively");
                }
            }
            break;
        }
    }
}

// ---------------------------------------------------------------------------
// Fixtures
// ---------------------------------------------------------------------------

Instance fixture(Fixture which, int copies) {
    RawInstance raw;
    if (which == Fixture::EmptyCore) {
        raw.players = 3;
        raw.edges = {{0, 1}, {1, 2}};
        raw.activities = {{"a", copies}, {"b", copies}};
        raw.prefs = {
            {{"b", 2, 2}, {"a", 3, 1}},
            {{"a", 2, 3}, {"b", 2, 2}, {"a", 3, 1}},
            {{"a", 3, 3}, {"b", 1, 2}, {"a", 2, 1}},
        };
        raw.provenance = R"({"fixture":"empty-core"})";
    } else {
        raw.players = 2;
        raw.edges = {{0, 1}};
        raw.activities = {{"a", copies}};
        raw.prefs = {
            {{"a", 1, 1}},
            {{"a", 2, 1}},
        };
        raw.provenance = R"({"fixture":"stalker"})";
    }
    return build_instance(raw);
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

namespace {

struct RainbowLayout {
    int m = 0;
    int num_edges = 0;
    int q = 0;
    int k = 0;
    int gadget_size = 2;  // 3 for the core construction
    std::vector<std::string> colors;
    std::vector<int> edge_color;

    explicit RainbowLayout(const RainbowPathSource& src, Concept notion) {
        m = src.vertices;
        num_edges = m - 1;
        colors = color_list(src);
        q = static_cast<int>(colors.size());
        k = src.k;
        gadget_size = notion == Concept::Core ? 3 : 2;
        for (const std::string& c : src.edge_colors) {
            edge_color.push_back(static_cast<int>(
                std::find(colors.begin(), colors.end(), c) - colors.begin()));
        }
    }

    int vertex_player(int i) const { return 2 * i; }
    int edge_player(int i) const { return 2 * i + 1; }
    int garbage_player(int g) const { return 2 * m - 1 + g; }
    int gadget_player(int color, int pos) const {
        return 2 * m - 1 + (q - k) + gadget_size * color + pos;
    }
    int total_players() const { return 2 * m - 1 + (q - k) + gadget_size * q; }
};

std::string aux_id(const std::string& color) { return "aux:" + color; }

}  // namespace

Instance generate_from_rainbow(const RainbowPathSource& src, Concept notion) {
    ReductionSource wrapper;
    wrapper.kind = ReductionSource::Kind::RainbowPath;
    wrapper.rainbow = src;
    validate_source(wrapper);
    if (notion == Concept::IR) throw ValidationError("no IR reduction family");

    const RainbowLayout lay(src, notion);
    RawInstance raw;
    raw.players = lay.total_players();
    for (int t = 0; t + 1 < raw.players; ++t) raw.edges.emplace_back(t, t + 1);

    for (const std::string& c : lay.colors) raw.activities.push_back({c, 1});
    if (notion == Concept::Core) {
        for (const std::string& c : lay.colors) raw.activities.push_back({aux_id(c), 1});
    }

    raw.prefs.assign(raw.players, {});
    for (int i = 0; i < lay.m; ++i) {
        auto& prefs = raw.prefs[lay.vertex_player(i)];
        std::set<int> incident;
        if (i > 0) incident.insert(lay.edge_color[i - 1]);
        if (i < lay.num_edges) incident.insert(lay.edge_color[i]);
        for (int c : incident) prefs.push_back({lay.colors[c], 3, 1});
    }
    for (int e = 0; e < lay.num_edges; ++e) {
        raw.prefs[lay.edge_player(e)].push_back({lay.colors[lay.edge_color[e]], 3, 1});
    }
    for (int g = 0; g < lay.q - lay.k; ++g) {
        for (const std::string& c : lay.colors) {
            raw.prefs[lay.garbage_player(g)].push_back({c, 1, 1});
        }
    }
    for (int c = 0; c < lay.q; ++c) {
        const std::string& color = lay.colors[c];
        if (notion == Concept::Nash) {
            raw.prefs[lay.gadget_player(c, 0)].push_back({color, 1, 1});
            raw.prefs[lay.gadget_player(c, 1)].push_back({color, 2, 1});
        } else {
            raw.prefs[lay.gadget_player(c, 0)] = {{color, 2, 2}, {aux_id(color), 3, 1}};
            raw.prefs[lay.gadget_player(c, 1)] = {
                {aux_id(color), 2, 3}, {color, 2, 2}, {aux_id(color), 3, 1}};
            raw.prefs[lay.gadget_player(c, 2)] = {
                {aux_id(color), 3, 3}, {color, 1, 2}, {aux_id(color), 2, 1}};
        }
    }

    Json prov{{"family", notion == Concept::Nash ? "ns-path-rainbow" : "core-path-rainbow"},
              {"source", wrapper.to_json()}};
    raw.provenance = prov.dump();
    return build_instance(raw);
}

namespace {

struct MmmLayout {
    int center = 0;
    int nv = 0;

    int vertex_player(int j) const { return 1 + j; }
    int stalker() const { return 1 + nv; }        // Nash construction
    int s1() const { return 1 + nv; }             // core construction
    int s2() const { return 2 + nv; }
};

std::string u_id(int i) { return "u" + std::to_string(i); }

}  // namespace

Instance generate_from_mmm(const MmmSource& src, Concept notion) {
    ReductionSource wrapper;
    wrapper.kind = ReductionSource::Kind::Mmm;
    wrapper.mmm = src;
    validate_source(wrapper);
    if (notion == Concept::IR) throw ValidationError("no IR reduction family");
    if (src.k > src.v) {
        throw ValidationError("the star construction needs k <= |V|");
    }

    MmmLayout lay;
    lay.nv = src.v;
    RawInstance raw;
    raw.players = src.v + (notion == Concept::Nash ? 2 : 3);
    for (int leaf = 1; leaf < raw.players; ++leaf) raw.edges.emplace_back(lay.center, leaf);

    for (int i = 0; i < src.u; ++i) raw.activities.push_back({u_id(i), 1});
    raw.activities.push_back({"a", 1});
    if (notion == Concept::Nash) {
        raw.activities.push_back({"b", 1});
    } else {
        raw.activities.push_back({"x", 1});
        raw.activities.push_back({"y", 1});
    }

    const int shared_size = src.v - src.k + 1;
    raw.prefs.assign(raw.players, {});
    for (int j = 0; j < src.v; ++j) {
        auto& prefs = raw.prefs[lay.vertex_player(j)];
        for (auto [u, v] : src.edges) {
            if (v == j) prefs.push_back({u_id(u), 1, 2});
        }
        prefs.push_back({"a", shared_size, 1});
    }
    if (notion == Concept::Nash) {
        raw.prefs[lay.center] = {{"a", shared_size, 2}, {"b", 1, 1}};
        raw.prefs[lay.stalker()] = {{"b", 2, 1}};
    } else {
        raw.prefs[lay.s1()] = {{"y", 2, 2}, {"x", 3, 1}};
        raw.prefs[lay.center] = {
            {"a", shared_size, 4}, {"x", 2, 3}, {"y", 2, 2}, {"x", 3, 1}};
        raw.prefs[lay.s2()] = {{"x", 3, 3}, {"y", 1, 2}, {"x", 2, 1}};
    }

    Json prov{{"family", notion == Concept::Nash ? "ns-star-mmm" : "core-star-mmm"},
              {"source", wrapper.to_json()}};
    raw.provenance = prov.dump();
    return build_instance(raw);
}

namespace {

std::string var_id(int v) { return "x" + std::to_string(v); }

// Activity id of one occurrence: x3+1, x3+2, x3-1, x3-2.
std::string occ_id(int var, bool positive, int which) {
    return var_id(var) + (positive ? "+" : "-") + std::to_string(which);
}

std::string clause_id(int c) { return "c" + std::to_string(c + 1); }

// occurrence activity of each clause position, in clause order
std::vector<std::array<std::string, 3>> occurrence_activities(const Sat3B2Source& src) {
    std::vector<int> pos(src.variables + 1, 0), neg(src.variables + 1, 0);
    std::vector<std::array<std::string, 3>> occ(src.clauses.size());
    for (size_t c = 0; c < src.clauses.size(); ++c) {
        for (int r = 0; r < 3; ++r) {
            const int lit = src.clauses[c][r];
            const int var = std::abs(lit);
            const int which = lit > 0 ? ++pos[var] : ++neg[var];
            occ[c][r] = occ_id(var, lit > 0, which);
        }
    }
    return occ;
}

struct SatNashLayout {
    int nx = 0;
    int positive(int var, int which) const { return 4 * (var - 1) + which - 1; }
    int negative(int var, int which) const { return 4 * (var - 1) + 1 + which; }
    int stalker(int c) const { return 4 * nx + 4 * c; }
    int clause_player(int c, int r) const { return 4 * nx + 4 * c + 1 + r; }
};

struct SatCoreLayout {
    int nx = 0;
    int positive(int var, int which) const { return 6 * (var - 1) + which - 1; }
    int var_player(int var) const { return 6 * (var - 1) + 2; }
    int negative(int var, int which) const { return 6 * (var - 1) + 2 + which; }
    int negvar_player(int var) const { return 6 * (var - 1) + 5; }
    int clause_player(int c, int r) const { return 6 * nx + 3 * c + r; }
};

}  // namespace

Instance generate_from_3sat(const Sat3B2Source& src, Concept notion) {
    ReductionSource wrapper;
    wrapper.kind = ReductionSource::Kind::Sat3B2;
    wrapper.sat = src;
    validate_source(wrapper);
    if (notion == Concept::IR) throw ValidationError("no IR reduction family");

    const auto occ = occurrence_activities(src);
    const int nx = src.variables;
    const int nc = static_cast<int>(src.clauses.size());
    RawInstance raw;

    if (notion == Concept::Nash) {
        SatNashLayout lay{nx};
        raw.players = 4 * nx + 4 * nc;
        for (int v = 1; v <= nx; ++v) {
            raw.edges.emplace_back(lay.positive(v, 1), lay.positive(v, 2));
            raw.edges.emplace_back(lay.negative(v, 1), lay.negative(v, 2));
        }
        for (int c = 0; c < nc; ++c) {
            for (int r = 0; r < 3; ++r) {
                raw.edges.emplace_back(lay.stalker(c), lay.clause_player(c, r));
            }
        }
        for (int v = 1; v <= nx; ++v) {
            raw.activities.push_back({var_id(v), 1});
            raw.activities.push_back({occ_id(v, true, 1), 1});
            raw.activities.push_back({occ_id(v, true, 2), 1});
            raw.activities.push_back({occ_id(v, false, 1), 1});
            raw.activities.push_back({occ_id(v, false, 2), 1});
            raw.activities.push_back({"a[" + var_id(v) + "]", 1});
            raw.activities.push_back({"a[!" + var_id(v) + "]", 1});
        }
        for (int c = 0; c < nc; ++c) raw.activities.push_back({clause_id(c), 1});

        raw.prefs.assign(raw.players, {});
        for (int v = 1; v <= nx; ++v) {
            const std::string x = var_id(v);
            const std::string ax = "a[" + x + "]";
            const std::string anx = "a[!" + x + "]";
            raw.prefs[lay.positive(v, 1)] = {{x, 2, 5},
                                             {x, 1, 4},
                                             {occ_id(v, true, 1), 1, 3},
                                             {occ_id(v, true, 2), 2, 2},
                                             {ax, 1, 1}};
            raw.prefs[lay.positive(v, 2)] = {
                {x, 2, 4}, {occ_id(v, true, 2), 1, 3}, {occ_id(v, true, 1), 2, 2}, {ax, 2, 1}};
            raw.prefs[lay.negative(v, 1)] = {{x, 2, 5},
                                             {x, 1, 4},
                                             {occ_id(v, false, 1), 1, 3},
                                             {occ_id(v, false, 2), 2, 2},
                                             {anx, 1, 1}};
            raw.prefs[lay.negative(v, 2)] = {
                {x, 2, 4}, {occ_id(v, false, 2), 1, 3}, {occ_id(v, false, 1), 2, 2}, {anx, 2, 1}};
        }
        for (int c = 0; c < nc; ++c) {
            for (int r = 0; r < 3; ++r) {
                raw.prefs[lay.clause_player(c, r)] = {{occ[c][r], 1, 2}, {clause_id(c), 2, 1}};
            }
            raw.prefs[lay.stalker(c)] = {{occ[c][0], 2, 1},
                                         {occ[c][1], 2, 1},
                                         {occ[c][2], 2, 1},
                                         {clause_id(c), 2, 1}};
        }
    } else {
        SatCoreLayout lay{nx};
        raw.players = 6 * nx + 3 * nc;
        for (int v = 1; v <= nx; ++v) {
            raw.edges.emplace_back(lay.var_player(v), lay.positive(v, 1));
            raw.edges.emplace_back(lay.var_player(v), lay.positive(v, 2));
            raw.edges.emplace_back(lay.negvar_player(v), lay.negative(v, 1));
            raw.edges.emplace_back(lay.negvar_player(v), lay.negative(v, 2));
        }
        for (int c = 0; c < nc; ++c) {
            raw.edges.emplace_back(lay.clause_player(c, 1), lay.clause_player(c, 0));
            raw.edges.emplace_back(lay.clause_player(c, 1), lay.clause_player(c, 2));
        }
        for (int v = 1; v <= nx; ++v) {
            raw.activities.push_back({var_id(v), 1});
            raw.activities.push_back({occ_id(v, true, 1), 1});
            raw.activities.push_back({occ_id(v, true, 2), 1});
            raw.activities.push_back({occ_id(v, false, 1), 1});
            raw.activities.push_back({occ_id(v, false, 2), 1});
            raw.activities.push_back({"a[" + var_id(v) + "]", 1});
            raw.activities.push_back({"b[" + var_id(v) + "]", 1});
            raw.activities.push_back({"a[!" + var_id(v) + "]", 1});
            raw.activities.push_back({"b[!" + var_id(v) + "]", 1});
        }

        raw.prefs.assign(raw.players, {});
        for (int v = 1; v <= nx; ++v) {
            const std::string x = var_id(v);
            const std::string ax = "a[" + x + "]";
            const std::string bx = "b[" + x + "]";
            const std::string anx = "a[!" + x + "]";
            const std::string bnx = "b[!" + x + "]";
            raw.prefs[lay.positive(v, 1)] = {
                {x, 3, 3}, {occ_id(v, true, 1), 1, 3}, {bx, 2, 2}, {ax, 3, 1}};
            raw.prefs[lay.positive(v, 2)] = {
                {x, 3, 4}, {occ_id(v, true, 2), 1, 4}, {ax, 2, 3}, {bx, 2, 2}, {ax, 3, 1}};
            raw.prefs[lay.var_player(v)] = {{x, 3, 4}, {ax, 3, 3}, {bx, 1, 2}, {ax, 2, 1}};
            raw.prefs[lay.negative(v, 1)] = {
                {x, 3, 3}, {occ_id(v, false, 1), 1, 3}, {bnx, 2, 2}, {anx, 2, 1}};
            raw.prefs[lay.negative(v, 2)] = {
                {x, 3, 4}, {occ_id(v, false, 2), 1, 4}, {anx, 2, 3}, {bnx, 2, 2}, {anx, 3, 1}};
            raw.prefs[lay.negvar_player(v)] = {{x, 3, 4}, {anx, 3, 3}, {bnx, 1, 2}, {anx, 2, 1}};
        }
        for (int c = 0; c < nc; ++c) {
            raw.prefs[lay.clause_player(c, 0)] = {{occ[c][0], 2, 1}};
            raw.prefs[lay.clause_player(c, 1)] = {
                {occ[c][1], 2, 3}, {occ[c][0], 2, 2}, {occ[c][2], 2, 1}};
            raw.prefs[lay.clause_player(c, 2)] = {
                {occ[c][2], 2, 3}, {occ[c][0], 1, 2}, {occ[c][1], 2, 1}};
        }
    }

    Json prov{{"family", notion == Concept::Nash ? "ns-components-3sat" : "core-components-3sat"},
              {"source", wrapper.to_json()}};
    raw.provenance = prov.dump();
    return build_instance(raw);
}

Instance generate(const ReductionSource& source, Concept notion) {
    switch (source.kind) {
        case ReductionSource::Kind::RainbowPath:
            return generate_from_rainbow(source.rainbow, notion);
        case ReductionSource::Kind::Mmm:
            return generate_from_mmm(source.mmm, notion);
        case ReductionSource::Kind::Sat3B2:
            return generate_from_3sat(source.sat, notion);
    }
    throw ValidationError("unknown source kind");
}

// ---------------------------------------------------------------------------
// Source solvers
// ---------------------------------------------------------------------------

namespace {

// The matching found with the requested property, as an edge-index mask.
struct MatchingScan {
    int best_size = -1;
    uint32_t best_mask = 0;
};

}  // namespace

int max_rainbow_matching(const RainbowPathSource& src) {
    const int e = static_cast<int>(src.edge_colors.size());
    if (e > 12) throw BoundError("rainbow source solver is exhaustive; at most 12 edges");
    const RainbowLayout lay(src, Concept::Nash);
    int best = 0;
    for (uint32_t mask = 0; mask < (1u << e); ++mask) {
        bool ok = true;
        std::set<int> used_colors;
        std::set<int> used_vertices;
        for (int i = 0; i < e && ok; ++i) {
            if (!(mask >> i & 1)) continue;
            ok = used_colors.insert(lay.edge_color[i]).second &&
                 used_vertices.insert(i).second && used_vertices.insert(i + 1).second;
        }
        if (ok) best = std::max(best, static_cast<int>(std::popcount(mask)));
    }
    return best;
}

int min_maximal_matching(const MmmSource& src) {
    const int e = static_cast<int>(src.edges.size());
    if (e > 12) throw BoundError("mmm source solver is exhaustive; at most 12 edges");
    int best = e + 1;
    for (uint32_t mask = 0; mask < (1u << e); ++mask) {
        std::set<int> used_u, used_v;
        bool matching = true;
        for (int i = 0; i < e && matching; ++i) {
            if (!(mask >> i & 1)) continue;
            matching = used_u.insert(src.edges[i].first).second &&
                       used_v.insert(src.edges[i].second).second;
        }
        if (!matching) continue;
        bool maximal = true;
        for (int i = 0; i < e && maximal; ++i) {
            if (mask >> i & 1) continue;
            if (!used_u.count(src.edges[i].first) && !used_v.count(src.edges[i].second)) {
                maximal = false;
            }
        }
        if (maximal) best = std::min(best, static_cast<int>(std::popcount(mask)));
    }
    return best;
}

bool satisfiable(const Sat3B2Source& src, std::vector<bool>* model) {
    if (src.variables > 12) {
        throw BoundError("sat source solver is exhaustive; at most 12 variables");
    }
    for (uint32_t mask = 0; mask < (1u << src.variables); ++mask) {
        bool ok = true;
        for (const auto& clause : src.clauses) {
            bool sat = false;
            for (int lit : clause) {
                const bool value = mask >> (std::abs(lit) - 1) & 1;
                if ((lit > 0) == value) sat = true;
            }
            if (!sat) {
                ok = false;
                break;
            }
        }
        if (ok) {
            if (model != nullptr) {
                model->assign(src.variables, false);
                for (int v = 0; v < src.variables; ++v) (*model)[v] = mask >> v & 1;
            }
            return true;
        }
    }
    return false;
}

bool source_yes(const ReductionSource& source) {
    switch (source.kind) {
        case ReductionSource::Kind::RainbowPath:
            return max_rainbow_matching(source.rainbow) >= source.rainbow.k;
        case ReductionSource::Kind::Mmm:
            return min_maximal_matching(source.mmm) <= source.mmm.k;
        case ReductionSource::Kind::Sat3B2:
            return satisfiable(source.sat);
    }
    return false;
}

// ---------------------------------------------------------------------------
// Witness constructions (forward directions)
// ---------------------------------------------------------------------------

namespace {

int activity_or_throw(const Instance& inst, const std::string& id) {
    const int a = inst.activity_index(id);
    if (a < 0) throw SolverError("generated instance misses activity " + id);
    return a;
}

// Deterministic rainbow matching of size exactly k, as edge indices.
std::vector<int> rainbow_matching_of_size(const RainbowPathSource& src, int k) {
    const int e = static_cast<int>(src.edge_colors.size());
    const RainbowLayout lay(src, Concept::Nash);
    for (uint32_t mask = 0; mask < (1u << e); ++mask) {
        if (std::popcount(mask) != k) continue;
        bool ok = true;
        std::set<int> used_colors;
        for (int i = 0; i < e && ok; ++i) {
            if (!(mask >> i & 1)) continue;
            if (i > 0 && (mask >> (i - 1) & 1)) ok = false;  // shares vertex i
            if (!used_colors.insert(lay.edge_color[i]).second) ok = false;
        }
        if (ok) {
            std::vector<int> edges;
            for (int i = 0; i < e; ++i) {
                if (mask >> i & 1) edges.push_back(i);
            }
            return edges;
        }
    }
    throw SolverError("no rainbow matching of the requested size");
}

}  // namespace

Assignment rainbow_witness(const RainbowPathSource& src, Concept notion, const Instance& gen) {
    const RainbowLayout lay(src, notion);
    const std::vector<int> matching = rainbow_matching_of_size(src, lay.k);
    Assignment pi(gen.player_count());

    std::vector<char> color_used(lay.q, 0);
    for (int e : matching) {
        const int a = activity_or_throw(gen, lay.colors[lay.edge_color[e]]);
        color_used[lay.edge_color[e]] = 1;
        pi.assign(lay.vertex_player(e), GroupRef{a, 0});
        pi.assign(lay.edge_player(e), GroupRef{a, 0});
        pi.assign(lay.vertex_player(e + 1), GroupRef{a, 0});
    }
    int g = 0;
    for (int c = 0; c < lay.q; ++c) {
        if (color_used[c]) continue;
        pi.assign(lay.garbage_player(g++), GroupRef{activity_or_throw(gen, lay.colors[c]), 0});
    }
    if (notion == Concept::Core) {
        for (int c = 0; c < lay.q; ++c) {
            const int aux = activity_or_throw(gen, aux_id(lay.colors[c]));
            for (int pos = 0; pos < 3; ++pos) {
                pi.assign(lay.gadget_player(c, pos), GroupRef{aux, 0});
            }
        }
    }
    return pi;
}

Assignment mmm_witness(const MmmSource& src, Concept notion, const Instance& gen) {
    const int e = static_cast<int>(src.edges.size());
    // Smallest maximal matching, by exhaustive scan (first of minimum size).
    uint32_t best_mask = 0;
    int best_size = e + 1;
    for (uint32_t mask = 0; mask < (1u << e); ++mask) {
        std::set<int> used_u, used_v;
        bool matching = true;
        for (int i = 0; i < e && matching; ++i) {
            if (!(mask >> i & 1)) continue;
            matching = used_u.insert(src.edges[i].first).second &&
                       used_v.insert(src.edges[i].second).second;
        }
        if (!matching) continue;
        bool maximal = true;
        for (int i = 0; i < e && maximal; ++i) {
            if (mask >> i & 1) continue;
            if (!used_u.count(src.edges[i].first) && !used_v.count(src.edges[i].second)) {
                maximal = false;
            }
        }
        if (maximal && static_cast<int>(std::popcount(mask)) < best_size) {
            best_size = static_cast<int>(std::popcount(mask));
            best_mask = mask;
        }
    }
    if (best_size > src.k) throw SolverError("no maximal matching within k; not a yes-source");

    MmmLayout lay;
    lay.nv = src.v;
    Assignment pi(gen.player_count());
    std::vector<char> matched(src.v, 0);
    for (int i = 0; i < e; ++i) {
        if (!(best_mask >> i & 1)) continue;
        const auto [u, v] = src.edges[i];
        matched[v] = 1;
        pi.assign(lay.vertex_player(v), GroupRef{activity_or_throw(gen, u_id(u)), 0});
    }
    const int a = activity_or_throw(gen, "a");
    pi.assign(lay.center, GroupRef{a, 0});
    int needed = src.v - src.k;
    for (int v = 0; v < src.v && needed > 0; ++v) {
        if (!matched[v]) {
            pi.assign(lay.vertex_player(v), GroupRef{a, 0});
            --needed;
        }
    }
    if (needed > 0) throw SolverError("not enough unmatched vertex players for the shared group");
    if (notion == Concept::Core) {
        pi.assign(lay.s2(), GroupRef{activity_or_throw(gen, "y"), 0});
    }
    return pi;
}

namespace {

// Clause gadget choice for the core construction: a digraph over
// candidate (activity, coalition) pairs, with a certified fallback when the
// remaining pair prefer-cycles (two options can dominate each other).
struct ClauseOption {
    std::string activity;
    std::vector<int> members;  // 0=c1, 1=c2, 2=c3
};

}  // namespace

Assignment sat_witness(const Sat3B2Source& src, Concept notion, const Instance& gen) {
    std::vector<bool> model;
    if (!satisfiable(src, &model)) throw SolverError("formula is unsatisfiable; no witness");
    const auto occ = occurrence_activities(src);
    const int nx = src.variables;
    const int nc = static_cast<int>(src.clauses.size());
    Assignment pi(gen.player_count());
    std::set<std::string> used;  // activities held by variable-gadget players

    auto assign_named = [&](int player, const std::string& id) {
        pi.assign(player, GroupRef{activity_or_throw(gen, id), 0});
        used.insert(id);
    };

    if (notion == Concept::Nash) {
        SatNashLayout lay{nx};
        for (int v = 1; v <= nx; ++v) {
            if (model[v - 1]) {
                assign_named(lay.positive(v, 1), occ_id(v, true, 1));
                assign_named(lay.positive(v, 2), occ_id(v, true, 2));
                assign_named(lay.negative(v, 1), var_id(v));
                pi.assign(lay.negative(v, 2), GroupRef{activity_or_throw(gen, var_id(v)), 0});
            } else {
                assign_named(lay.negative(v, 1), occ_id(v, false, 1));
                assign_named(lay.negative(v, 2), occ_id(v, false, 2));
                assign_named(lay.positive(v, 1), var_id(v));
                pi.assign(lay.positive(v, 2), GroupRef{activity_or_throw(gen, var_id(v)), 0});
            }
        }
        for (int c = 0; c < nc; ++c) {
            int satisfied = -1;
            for (int r = 0; r < 3 && satisfied < 0; ++r) {
                if (used.count(occ[c][r])) satisfied = r;
            }
            if (satisfied < 0) throw SolverError("satisfying assignment left a clause unserved");
            const int cact = activity_or_throw(gen, clause_id(c));
            pi.assign(lay.clause_player(c, satisfied), GroupRef{cact, 0});
            pi.assign(lay.stalker(c), GroupRef{cact, 0});
            for (int r = 0; r < 3; ++r) {
                if (r == satisfied) continue;
                if (!used.count(occ[c][r])) {
                    assign_named(lay.clause_player(c, r), occ[c][r]);
                }
            }
        }
        return pi;
    }

    SatCoreLayout lay{nx};
    for (int v = 1; v <= nx; ++v) {
        if (model[v - 1]) {
            assign_named(lay.positive(v, 1), occ_id(v, true, 1));
            assign_named(lay.positive(v, 2), occ_id(v, true, 2));
            assign_named(lay.var_player(v), "b[" + var_id(v) + "]");
            assign_named(lay.negative(v, 1), var_id(v));
            const int x = activity_or_throw(gen, var_id(v));
            pi.assign(lay.negative(v, 2), GroupRef{x, 0});
            pi.assign(lay.negvar_player(v), GroupRef{x, 0});
        } else {
            assign_named(lay.negative(v, 1), occ_id(v, false, 1));
            assign_named(lay.negative(v, 2), occ_id(v, false, 2));
            assign_named(lay.negvar_player(v), "b[!" + var_id(v) + "]");
            assign_named(lay.positive(v, 1), var_id(v));
            const int x = activity_or_throw(gen, var_id(v));
            pi.assign(lay.positive(v, 2), GroupRef{x, 0});
            pi.assign(lay.var_player(v), GroupRef{x, 0});
        }
    }

    for (int c = 0; c < nc; ++c) {
        const std::vector<ClauseOption> all_options = {
            {occ[c][0], {0, 1}},
            {occ[c][1], {1, 2}},
            {occ[c][0], {2}},
            {occ[c][2], {1, 2}},
        };
        std::vector<ClauseOption> options;
        for (const ClauseOption& opt : all_options) {
            if (!used.count(opt.activity)) options.push_back(opt);
        }
        const int base = lay.clause_player(c, 0);

        auto rank_of = [&](int member, const std::string& id, int size) {
            return gen.rank(base + member, Alternative{activity_or_throw(gen, id), size});
        };
        // A candidate clause assignment survives if no connected subset of the
        // gadget strongly blocks with a locally available activity.
        auto locally_stable = [&](int chosen) {
            std::vector<int> cur(3, 0);
            if (chosen >= 0) {
                const auto& opt = options[chosen];
                for (int member : opt.members) {
                    cur[member] =
                        rank_of(member, opt.activity, static_cast<int>(opt.members.size()));
                }
            }
            const std::vector<std::vector<int>> subsets = {{0}, {1}, {2}, {0, 1}, {1, 2}, {0, 1, 2}};
            for (const auto& sub : subsets) {
                for (int r = 0; r < 3; ++r) {
                    if (used.count(occ[c][r])) continue;  // held remotely, unreachable
                    if (chosen >= 0 && options[chosen].activity == occ[c][r]) {
                        // Containment: the current group must sit inside sub.
                        bool contained = true;
                        for (int member : options[chosen].members) {
                            contained &= std::find(sub.begin(), sub.end(), member) != sub.end();
                        }
                        if (!contained) continue;
                    }
                    bool all_strict = true;
                    for (int member : sub) {
                        all_strict &=
                            rank_of(member, occ[c][r], static_cast<int>(sub.size())) > cur[member];
                    }
                    if (all_strict) return false;
                }
            }
            return true;
        };

        int chosen = -1;
        // Prefer an option no other option dominates.
        for (size_t i = 0; i < options.size() && chosen < 0; ++i) {
            bool dominated = false;
            for (size_t j = 0; j < options.size() && !dominated; ++j) {
                if (i == j) continue;
                for (int member : options[j].members) {
                    if (std::find(options[i].members.begin(), options[i].members.end(), member) ==
                        options[i].members.end()) {
                        continue;
                    }
                    if (rank_of(member, options[j].activity,
                                static_cast<int>(options[j].members.size())) >
                        rank_of(member, options[i].activity,
                                static_cast<int>(options[i].members.size()))) {
                        dominated = true;
                        break;
                    }
                }
            }
            if (!dominated && locally_stable(static_cast<int>(i))) chosen = static_cast<int>(i);
        }
        for (size_t i = 0; i < options.size() && chosen < 0; ++i) {
            if (locally_stable(static_cast<int>(i))) chosen = static_cast<int>(i);
        }
        if (chosen < 0 && !locally_stable(-1)) {
            throw SolverError("no stable clause-gadget assignment; construction defect");
        }
        if (chosen >= 0) {
            const auto& opt = options[chosen];
            const int act = activity_or_throw(gen, opt.activity);
            for (int member : opt.members) pi.assign(base + member, GroupRef{act, 0});
        }
    }
    return pi;
}

// ---------------------------------------------------------------------------
// Reduction verification
// ---------------------------------------------------------------------------

bool verify_reduction(const ReductionSource& source, Concept notion, const OracleLimits& limits) {
    validate_source(source);
    const bool yes = source_yes(source);
    const Instance gen = generate(source, notion);

    auto witness_certifies = [&]() {
        Assignment pi = notion == Concept::Nash || notion == Concept::Core
                            ? (source.kind == ReductionSource::Kind::RainbowPath
                                   ? rainbow_witness(source.rainbow, notion, gen)
                               : source.kind == ReductionSource::Kind::Mmm
                                   ? mmm_witness(source.mmm, notion, gen)
                                   : sat_witness(source.sat, notion, gen))
                            : Assignment(gen.player_count());
        return is_stable(gen, pi, notion, StrongBlockLimits{.max_players = 0, .unbounded = true});
    };

    switch (source.kind) {
        case ReductionSource::Kind::RainbowPath:
            if (notion == Concept::Nash) {
                const bool solver = solve_ns_path(gen).found();
                if (yes && !witness_certifies()) return false;
                return solver == yes;
            }
            if (yes) return witness_certifies();
            return !oracle_find_stable(gen, Concept::Core, limits).found();
        case ReductionSource::Kind::Mmm: {
            if (yes && !witness_certifies()) return false;
            if (notion == Concept::Nash) {
                return solve_ns_star(gen).found() == yes;
            }
            return oracle_find_stable(gen, Concept::Core, limits).found() == yes;
        }
        case ReductionSource::Kind::Sat3B2:
            if (!yes) {
                throw BoundError(
                    "the reverse direction of the 3SAT constructions is not desk-checkable");
            }
            return witness_certifies();
    }
    return false;
}

}  // namespace ggasp
