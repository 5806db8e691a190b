#include "ggasp/bench.hpp"

#include <algorithm>
#include <sstream>

#include "ggasp/fpt.hpp"
#include "ggasp/solve.hpp"

namespace ggasp {

namespace {

void sample_prefs(Rng& rng, RawInstance& raw, double q) {
    const int n = raw.players;
    const int half = (n + 1) / 2;
    raw.prefs.assign(n, {});
    for (int i = 0; i < n; ++i) {
        for (const ActivityClass& cls : raw.activities) {
            // Buckets: alone, small group, large group.
            const std::vector<std::pair<int, int>> buckets = {
                {1, 1}, {2, half}, {half + 1, n}};
            for (auto [lo, hi] : buckets) {
                if (lo > hi || lo > n) continue;
                if (!rng.chance(q)) continue;
                const int rank = rng.uniform(1, 3);
                for (int size = lo; size <= std::min(hi, n); ++size) {
                    raw.prefs[i].push_back({cls.id, size, rank});
                }
            }
        }
    }
}

std::vector<ActivityClass> classes(int p, int copies) {
    std::vector<ActivityClass> out;
    for (int a = 0; a < p; ++a) {
        out.push_back({"a" + std::to_string(a), copies});
    }
    return out;
}

}  // namespace

Instance random_path_instance(Rng& rng, int n, int p, double q) {
    RawInstance raw;
    raw.players = n;
    for (int v = 0; v + 1 < n; ++v) raw.edges.emplace_back(v, v + 1);
    raw.activities = classes(p, 1);
    sample_prefs(rng, raw, q);
    return build_instance(raw);
}

Instance random_star_instance(Rng& rng, int n, int p, double q) {
    RawInstance raw;
    raw.players = n;
    for (int leaf = 1; leaf < n; ++leaf) raw.edges.emplace_back(0, leaf);
    raw.activities = classes(p, 1);
    sample_prefs(rng, raw, q);
    return build_instance(raw);
}

Instance random_components_instance(Rng& rng, int component_size, int components, int p,
                                    double q) {
    RawInstance raw;
    raw.players = 0;
    for (int comp = 0; comp < components; ++comp) {
        const int size = rng.uniform(1, component_size);
        const int base = raw.players;
        raw.players += size;
        for (int v = 1; v < size; ++v) {
            raw.edges.emplace_back(base + v, base + rng.uniform(0, v - 1));
        }
        // Occasionally close a cycle; component structure is unrestricted.
        if (size >= 3 && rng.chance(0.3)) {
            raw.edges.emplace_back(base, base + size - 1);
        }
    }
    raw.activities = classes(p, 1);
    sample_prefs(rng, raw, q);
    return build_instance(raw);
}

Instance random_forest_instance(Rng& rng, int n, int p, double q, int copies) {
    RawInstance raw;
    raw.players = n;
    for (int v = 1; v < n; ++v) {
        if (rng.chance(0.8)) raw.edges.emplace_back(v, rng.uniform(0, v - 1));
    }
    raw.activities = classes(p, copies);
    sample_prefs(rng, raw, q);
    return build_instance(raw);
}

std::vector<BenchRecord> run_bench(const BenchParams& params) {
    std::vector<BenchRecord> records;
    Rng rng(params.seed);
    std::vector<int> sizes{params.n_min};
    if (params.n_max != params.n_min) sizes.push_back(params.n_max);

    for (int p = params.p_min; p <= params.p_max; ++p) {
        for (int n : sizes) {
            for (int rep = 0; rep < params.reps; ++rep) {
                const std::string id = params.suite + "-p" + std::to_string(p) + "-n" +
                                       std::to_string(n) + "-r" + std::to_string(rep);
                if (params.suite == "paths") {
                    const Instance inst = random_path_instance(rng, n, p, params.q_approve);
                    const SolveOutcome outcome = solve_ns_path(inst);
                    records.push_back({id, "path", n, p, n, outcome.elapsed_seconds,
                                       outcome.found() ? "FOUND" : "NONE_EXISTS"});
                } else if (params.suite == "stars") {
                    const Instance inst = random_star_instance(rng, n, p, params.q_approve);
                    const SolveOutcome derand = solve_ns_star(inst);
                    records.push_back({id, "star", n, p, n, derand.elapsed_seconds,
                                       derand.found() ? "FOUND" : "NONE_EXISTS"});
                    StarOptions randomized;
                    randomized.mode = StarOptions::Mode::Randomized;
                    randomized.seed = rng.next();
                    const SolveOutcome rand_outcome = solve_ns_star(inst, randomized);
                    records.push_back({id, "star-randomized", n, p, n,
                                       rand_outcome.elapsed_seconds,
                                       rand_outcome.found() ? "FOUND" : "NONE_EXISTS"});
                } else if (params.suite == "components") {
                    const Instance inst = random_components_instance(
                        rng, params.component_size, std::max(1, n / params.component_size), p,
                        params.q_approve);
                    ComponentBound bound{params.component_size};
                    const SolveOutcome outcome = solve_ns_components(inst, bound);
                    const Topology topo = classify_topology(inst);
                    records.push_back({id, "components", inst.player_count(), p,
                                       topo.max_component_size, outcome.elapsed_seconds,
                                       outcome.found() ? "FOUND" : "NONE_EXISTS"});
                } else {
                    throw ValidationError("unknown bench suite: " + params.suite);
                }
            }
        }
    }
    return records;
}

std::string records_to_csv(const std::vector<BenchRecord>& records) {
    std::ostringstream out;
    out << "instance_id,method,n,p,c,elapsed_seconds,verdict\n";
    for (const BenchRecord& r : records) {
        out << r.instance_id << ',' << r.method << ',' << r.n << ',' << r.p << ',' << r.c << ','
            << r.elapsed_seconds << ',' << r.verdict << '\n';
    }
    return out.str();
}

}  // namespace ggasp
