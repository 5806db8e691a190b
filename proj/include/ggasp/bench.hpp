#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ggasp/model.hpp"
#include "ggasp/rng.hpp"

namespace ggasp {

struct BenchRecord {
    std::string instance_id;
    std::string method;
    int n = 0;
    int p = 0;
    int c = 0;
    double elapsed_seconds = 0.0;
    std::string verdict;
};

struct BenchParams {
    std::string suite = "paths";  // paths | stars | components
    int p_min = 1;
    int p_max = 4;
    int n_min = 20;
    int n_max = 20;
    int reps = 5;
    std::uint64_t seed = 1;
    double q_approve = 0.3;
    int component_size = 3;  // components suite
};

/// Random single-copy instances drawn with the bucketed approval sampler:
/// every (player, class, size bucket) is approved with probability q, the
/// buckets being {1}, {2..ceil(n/2)}, {ceil(n/2)+1..n}; approved buckets get a
/// uniform rank in 1..3.
Instance random_path_instance(Rng& rng, int n, int p, double q);
Instance random_star_instance(Rng& rng, int n, int p, double q);
Instance random_components_instance(Rng& rng, int component_size, int components, int p, double q);
Instance random_forest_instance(Rng& rng, int n, int p, double q, int copies);

std::vector<BenchRecord> run_bench(const BenchParams& params);

std::string records_to_csv(const std::vector<BenchRecord>& records);

}  // namespace ggasp
