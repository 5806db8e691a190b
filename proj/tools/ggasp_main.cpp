#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "ggasp/bench.hpp"
#include "ggasp/io.hpp"
#include "ggasp/reductions.hpp"
#include "ggasp/solve.hpp"

namespace {

// Exit codes: 0 ok/stable/found, 1 error, 2 none-exists, 3 unstable.
constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kNoneExists = 2;
constexpr int kViolated = 3;

ggasp::Concept concept_from_string(const std::string& name) {
    if (name == "nash") return ggasp::Concept::Nash;
    if (name == "core") return ggasp::Concept::Core;
    if (name == "ir") return ggasp::Concept::IR;
    throw ggasp::ValidationError("unknown concept: " + name);
}

int run_check(const std::string& instance_path, const std::string& assignment_path,
              const std::string& concept_name, int max_oracle_n) {
    const ggasp::Instance inst = ggasp::load_instance(instance_path);
    const ggasp::Assignment pi = ggasp::load_assignment(assignment_path, inst);
    const ggasp::Concept notion = concept_from_string(concept_name);
    ggasp::StrongBlockLimits limits;
    if (max_oracle_n > 0) limits.max_players = std::max(limits.max_players, max_oracle_n);
    const ggasp::StabilityReport report = ggasp::analyze_assignment(inst, pi, notion, limits);
    const ggasp::Json out = ggasp::report_to_json(report, inst, notion);
    std::cout << out.dump(2) << std::endl;
    return out["stable"].get<bool>() ? kOk : kViolated;
}

int run_solve(const std::string& instance_path, const std::string& concept_name,
              const std::string& method_name, const std::string& out_path, std::uint64_t seed,
              bool derandomize, int max_oracle_n) {
    const ggasp::Instance inst = ggasp::load_instance(instance_path);
    const ggasp::Concept notion = concept_from_string(concept_name);
    ggasp::SolveOptions options;
    options.method = ggasp::method_from_string(method_name);
    options.oracle = ggasp::oracle_limits_from_env();
    if (max_oracle_n > 0) options.oracle.max_players = max_oracle_n;
    options.star.seed = seed;
    options.star.mode = derandomize ? ggasp::StarOptions::Mode::Derandomized
                                    : ggasp::StarOptions::Mode::Randomized;
    const ggasp::SolveOutcome outcome = ggasp::solve(inst, notion, options);
    const ggasp::Json out = ggasp::outcome_to_json(outcome, inst);
    if (!out_path.empty() && outcome.found()) {
        ggasp::save_json(out_path, out);
    }
    std::cout << out.dump(2) << std::endl;
    return outcome.found() ? kOk : kNoneExists;
}

int run_generate(const std::string& family, const std::string& source_path,
                 const std::string& out_path) {
    const ggasp::Json source_json = ggasp::load_json(source_path);
    const ggasp::ReductionSource source = ggasp::ReductionSource::from_json(source_json);

    ggasp::Concept notion;
    ggasp::ReductionSource::Kind kind;
    if (family == "ns-path-rainbow") {
        notion = ggasp::Concept::Nash;
        kind = ggasp::ReductionSource::Kind::RainbowPath;
    } else if (family == "core-path-rainbow") {
        notion = ggasp::Concept::Core;
        kind = ggasp::ReductionSource::Kind::RainbowPath;
    } else if (family == "ns-star-mmm") {
        notion = ggasp::Concept::Nash;
        kind = ggasp::ReductionSource::Kind::Mmm;
    } else if (family == "core-star-mmm") {
        notion = ggasp::Concept::Core;
        kind = ggasp::ReductionSource::Kind::Mmm;
    } else if (family == "ns-components-3sat") {
        notion = ggasp::Concept::Nash;
        kind = ggasp::ReductionSource::Kind::Sat3B2;
    } else if (family == "core-components-3sat") {
        notion = ggasp::Concept::Core;
        kind = ggasp::ReductionSource::Kind::Sat3B2;
    } else {
        throw ggasp::ValidationError("unknown family: " + family);
    }
    if (source.kind != kind) {
        throw ggasp::ValidationError("source type does not match family " + family);
    }
    const ggasp::Instance inst = ggasp::generate(source, notion);
    ggasp::save_json(out_path, ggasp::instance_to_json(inst));
    std::cout << "wrote " << out_path << " (" << inst.player_count() << " players, "
              << inst.activity_count() << " classes)" << std::endl;
    return kOk;
}

int run_bench_cmd(const ggasp::BenchParams& params, const std::string& out_path) {
    const auto records = ggasp::run_bench(params);
    if (out_path.empty() || out_path.ends_with(".csv")) {
        const std::string csv = ggasp::records_to_csv(records);
        if (out_path.empty()) {
            std::cout << csv;
        } else {
            std::ofstream out(out_path);
            if (!out) throw ggasp::ValidationError("cannot write " + out_path);
            out << csv;
        }
    } else {
        ggasp::Json arr = ggasp::Json::array();
        for (const auto& r : records) {
            arr.push_back({{"instance_id", r.instance_id},
                           {"method", r.method},
                           {"n", r.n},
                           {"p", r.p},
                           {"c", r.c},
                           {"elapsed_seconds", r.elapsed_seconds},
                           {"verdict", r.verdict}});
        }
        ggasp::save_json(out_path, arr);
    }
    std::cerr << records.size() << " records" << std::endl;
    return kOk;
}

int run_fixture(const std::string& name, int copies, const std::string& out_path) {
    ggasp::Fixture which;
    if (name == "empty-core") {
        which = ggasp::Fixture::EmptyCore;
    } else if (name == "stalker") {
        which = ggasp::Fixture::Stalker;
    } else {
        throw ggasp::ValidationError("unknown fixture: " + name);
    }
    const ggasp::Instance inst = ggasp::fixture(which, copies);
    ggasp::save_json(out_path, ggasp::instance_to_json(inst));
    std::cout << "wrote " << out_path << std::endl;
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stability toolkit for group activity selection on social networks"};
    app.require_subcommand(1);

    std::string instance_path, assignment_path, out_path, source_path;
    std::string concept_name = "nash";
    std::string method_name = "auto";
    std::string family, fixture_name;
    std::uint64_t seed = 0;
    bool derandomize = true;
    int max_oracle_n = 0;
    int copies = 1;

    auto* check = app.add_subcommand("check", "Check an assignment against a stability notion");
    check->add_option("--instance", instance_path)->required();
    check->add_option("--assignment", assignment_path)->required();
    check->add_option("--concept", concept_name)->check(CLI::IsMember({"nash", "core", "ir"}));
    check->add_option("--max-oracle-n", max_oracle_n);

    auto* solve = app.add_subcommand("solve", "Find a stable assignment or report none exists");
    solve->add_option("--instance", instance_path)->required();
    solve->add_option("--concept", concept_name)->check(CLI::IsMember({"nash", "core", "ir"}));
    solve->add_option("--method", method_name)
        ->check(CLI::IsMember({"auto", "oracle", "path", "star", "components", "forest-copyable"}));
    solve->add_option("--out", out_path);
    solve->add_option("--seed", seed);
    solve->add_flag("--derandomize,!--randomized", derandomize,
                    "Use the derandomized star mode (default)");
    solve->add_option("--max-oracle-n", max_oracle_n);

    auto* generate = app.add_subcommand("generate", "Generate a hardness-gadget instance");
    generate->add_option("--family", family)
        ->required()
        ->check(CLI::IsMember({"ns-path-rainbow", "core-path-rainbow", "ns-star-mmm",
                               "core-star-mmm", "ns-components-3sat", "core-components-3sat"}));
    generate->add_option("--source", source_path)->required();
    generate->add_option("--out", out_path)->required();

    ggasp::BenchParams bench_params;
    auto* bench = app.add_subcommand("bench", "Time the solvers on random instances");
    bench->add_option("--suite", bench_params.suite)
        ->check(CLI::IsMember({"paths", "stars", "components"}));
    bench->add_option("--p-min", bench_params.p_min);
    bench->add_option("--p-max", bench_params.p_max);
    bench->add_option("--n-min", bench_params.n_min);
    bench->add_option("--n-max", bench_params.n_max);
    bench->add_option("--reps", bench_params.reps);
    bench->add_option("--seed", bench_params.seed);
    bench->add_option("--q-approve", bench_params.q_approve);
    bench->add_option("--component-size", bench_params.component_size);
    bench->add_option("--out", out_path);

    auto* fixture_cmd = app.add_subcommand("fixture", "Write a built-in example instance");
    fixture_cmd->add_option("name", fixture_name)
        ->required()
        ->check(CLI::IsMember({"empty-core", "stalker"}));
    fixture_cmd->add_option("--copies", copies);
    fixture_cmd->add_option("--out", out_path)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) {
            return run_check(instance_path, assignment_path, concept_name, max_oracle_n);
        }
        if (solve->parsed()) {
            return run_solve(instance_path, concept_name, method_name, out_path, seed,
                             derandomize, max_oracle_n);
        }
        if (generate->parsed()) return run_generate(family, source_path, out_path);
        if (bench->parsed()) return run_bench_cmd(bench_params, out_path);
        if (fixture_cmd->parsed()) return run_fixture(fixture_name, copies, out_path);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << std::endl;
        return kError;
    }
    return kError;
}
