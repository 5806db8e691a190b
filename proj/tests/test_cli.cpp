// Exit-code contract tests for the command line tool. The binary path comes
// in as argv[1]; every command runs through std::system in a scratch
// directory.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "ggasp/io.hpp"
#include "ggasp/reductions.hpp"

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
    if (!ok) {
        std::cerr << "FAIL: " << what << '\n';
        ++failures;
    }
}

int run(const std::string& cmd) {
    const int status = std::system((cmd + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(status);
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: ggasp_cli_tests <ggasp-binary>\n";
        return 1;
    }
    const std::string bin = argv[1];
    const auto dir = std::filesystem::temp_directory_path() / "ggasp_cli_tests";
    std::filesystem::create_directories(dir);
    const auto path = [&](const std::string& name) { return (dir / name).string(); };

    ggasp::save_json(path("ex1.json"), ggasp::instance_to_json(ggasp::fixture(ggasp::Fixture::EmptyCore)));
    ggasp::save_json(path("stalker.json"),
                     ggasp::instance_to_json(ggasp::fixture(ggasp::Fixture::Stalker)));
    {
        std::ofstream out(path("bb_void.json"));
        out << R"({"assignment": [{"player":0,"activity":"b","copy":0},
                                  {"player":1,"activity":"b","copy":0},
                                  {"player":2,"activity":null}]})";
    }
    {
        std::ofstream out(path("truncated.json"));
        out << "{\"players\": 3, \"edges\": [[0,";
    }
    ggasp::save_json(path("rainbow.json"),
                     ggasp::Json{{"type", "rainbow_path"},
                                 {"vertices", 3},
                                 {"edge_colors", {"c1", "c2"}},
                                 {"k", 1}});
    ggasp::save_json(path("mmm.json"), ggasp::Json{{"type", "mmm"},
                                                   {"u", 1},
                                                   {"v", 1},
                                                   {"edges", {{0, 0}}},
                                                   {"k", 1}});
    ggasp::save_json(path("badsat.json"),
                     ggasp::Json{{"type", "sat3b2"},
                                 {"variables", 2},
                                 {"clauses", {{1, 2, -1}, {-2, 1, 2}}}});

    // check: stable => 0, violated => 3 with a witness, IO error => 1
    expect(run(bin + " check --instance " + path("ex1.json") + " --assignment " +
               path("bb_void.json") + " --concept nash") == 0,
           "nash check of (b,b,void) exits 0");
    expect(run(bin + " check --instance " + path("ex1.json") + " --assignment " +
               path("bb_void.json") + " --concept core") == 3,
           "core check of (b,b,void) exits 3");
    expect(run(bin + " check --instance " + path("truncated.json") + " --assignment " +
               path("bb_void.json") + " --concept nash") == 1,
           "truncated instance file exits 1");

    // solve: found => 0 and the output re-checks, none => 2, misuse => 1
    expect(run(bin + " solve --instance " + path("stalker.json") + " --concept nash") == 2,
           "stalker nash solve exits 2");
    expect(run(bin + " solve --instance " + path("ex1.json") + " --concept nash --method path" +
               " --out " + path("solved.json")) == 0,
           "example nash solve via the path method exits 0");
    expect(run(bin + " check --instance " + path("ex1.json") + " --assignment " +
               path("solved.json") + " --concept nash") == 0,
           "solver output passes its own check");
    expect(run(bin + " solve --instance " + path("ex1.json") + " --concept core --method oracle") ==
               2,
           "example core solve exits 2");
    expect(run(bin + " solve --instance " + path("ex1.json") + " --concept core --method star") ==
               1,
           "inapplicable method exits 1");

    // generate: family/source mismatches and invalid sources exit 1
    expect(run(bin + " generate --family ns-path-rainbow --source " + path("rainbow.json") +
               " --out " + path("gen1.json")) == 0,
           "rainbow generation exits 0");
    const ggasp::Instance gen1 = ggasp::load_instance(path("gen1.json"));
    expect(gen1.player_count() == 10, "generated rainbow instance has 10 players");
    expect(run(bin + " generate --family core-star-mmm --source " + path("mmm.json") + " --out " +
               path("gen2.json")) == 0,
           "mmm core generation exits 0");
    const ggasp::Instance gen2 = ggasp::load_instance(path("gen2.json"));
    expect(gen2.player_count() == 4 && gen2.activity_count() == 4,
           "mmm core instance has 4 players and 4 classes");
    expect(run(bin + " generate --family ns-components-3sat --source " + path("badsat.json") +
               " --out " + path("gen3.json")) == 1,
           "occurrence-count violation exits 1");
    expect(run(bin + " generate --family ns-star-mmm --source " + path("rainbow.json") +
               " --out " + path("gen4.json")) == 1,
           "family/source mismatch exits 1");

    // bench: smoke run, deterministic under a fixed seed
    expect(run(bin + " bench --suite paths --p-min 1 --p-max 2 --n-min 6 --n-max 6 --reps 2" +
               " --seed 7 --out " + path("bench1.csv")) == 0,
           "bench exits 0");
    expect(run(bin + " bench --suite paths --p-min 1 --p-max 2 --n-min 6 --n-max 6 --reps 2" +
               " --seed 7 --out " + path("bench2.csv")) == 0,
           "bench rerun exits 0");
    {
        std::ifstream a(path("bench1.csv")), b(path("bench2.csv"));
        std::string va, vb, la, lb;
        int lines = 0;
        bool same_shape = true;
        while (std::getline(a, la) && std::getline(b, lb)) {
            ++lines;
            // Timing columns differ; verdicts and ids must not.
            const auto cut = [](std::string s) {
                const auto comma = s.rfind(',');
                const auto prev = s.rfind(',', comma - 1);
                return s.substr(0, prev) + s.substr(comma);
            };
            if (cut(la) != cut(lb)) same_shape = false;
        }
        expect(lines == 5 && same_shape, "bench output is reproducible modulo timing");
    }

    // fixture subcommand round trip
    expect(run(bin + " fixture stalker --copies 2 --out " + path("fx.json")) == 0,
           "fixture dump exits 0");
    const ggasp::Instance fx = ggasp::load_instance(path("fx.json"));
    expect(fx.copies(0) == 2, "fixture copies override");

    // Oracle bound: 11 players exceed the default, flag and env raise it.
    {
        ggasp::RawInstance raw;
        raw.players = 11;
        ggasp::save_json(path("eleven.json"),
                         ggasp::instance_to_json(ggasp::build_instance(raw)));
    }
    expect(run(bin + " solve --instance " + path("eleven.json") +
               " --concept nash --method oracle") == 1,
           "oracle above its bound exits 1");
    expect(run(bin + " solve --instance " + path("eleven.json") +
               " --concept nash --method oracle --max-oracle-n 12") == 0,
           "raised oracle bound solves the empty instance");
    expect(run("GGASP_MAX_ORACLE_N=12 " + bin + " solve --instance " + path("eleven.json") +
               " --concept nash --method oracle") == 0,
           "GGASP_MAX_ORACLE_N raises the bound too");

    std::filesystem::remove_all(dir);
    if (failures == 0) {
        std::cout << "cli tests passed\n";
        return 0;
    }
    std::cerr << failures << " cli tests failed\n";
    return 1;
}
