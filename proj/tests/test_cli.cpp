#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "elena/io.hpp"

namespace {

namespace fs = std::filesystem;

struct CommandResult {
    int exit_code = -1;
    std::string output;
};

CommandResult run_cli(const std::string& args, const fs::path& scratch) {
    const fs::path out_file = scratch / "stdout.txt";
    const std::string command =
        std::string(ELENA_CLI_BIN) + " " + args + " > " + out_file.string() + " 2>/dev/null";
    const int status = std::system(command.c_str());
    CommandResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    if (fs::exists(out_file)) {
        result.output = elena::read_text_file(out_file);
        fs::remove(out_file);
    }
    return result;
}

fs::path make_scratch(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("elena-cli-test-" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string strip_newline(std::string s) {
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) {
        s.pop_back();
    }
    return s;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("solve prints the collinear nearest-neighbor length") {
    const auto scratch = make_scratch("nn");
    const std::string fixture =
        "NAME : collinear\nTYPE : TSP\nDIMENSION : 3\nEDGE_WEIGHT_TYPE : REAL_EUC_2D\n"
        "NODE_COORD_SECTION\n1 0 0\n2 1 0\n3 2 0\nEOF\n";
    elena::write_text_file(scratch / "collinear.tsp", fixture);

    const auto result = run_cli("solve --problem tsp --instance " +
                                    (scratch / "collinear.tsp").string() +
                                    " --algo nn --out " + (scratch / "out").string(),
                                scratch);
    CHECK(result.exit_code == 0);
    CHECK(strip_newline(result.output) == "4");
    fs::remove_all(scratch);
}

TEST_CASE("repeated solve invocations are byte-identical") {
    const auto scratch = make_scratch("determinism");
    const std::string args =
        "solve --problem tsp --generate n=9,seed=4 --algo elena --seed 11 --max-gens 40";

    const auto first = run_cli(args + " --out " + (scratch / "a").string(), scratch);
    const auto second = run_cli(args + " --out " + (scratch / "b").string(), scratch);
    CHECK(first.exit_code == 0);
    CHECK(first.output == second.output);

    std::vector<fs::path> files_a;
    for (const auto& entry : fs::directory_iterator(scratch / "a")) {
        files_a.push_back(entry.path().filename());
    }
    REQUIRE(!files_a.empty());
    for (const auto& name : files_a) {
        CHECK(elena::read_text_file(scratch / "a" / name) ==
              elena::read_text_file(scratch / "b" / name));
    }
    fs::remove_all(scratch);
}

TEST_CASE("unknown flags and unreadable files exit with validation status") {
    const auto scratch = make_scratch("errors");
    CHECK(run_cli("solve --problem tsp --no-such-flag", scratch).exit_code == 1);
    CHECK(run_cli("solve --problem tsp --instance /nonexistent.tsp --algo nn", scratch)
              .exit_code == 1);
    CHECK(run_cli("solve --problem tsp --generate n=5,seed=1 --algo greedy-clique", scratch)
              .exit_code == 1);
    CHECK(run_cli("bench --problem tsp --trials 2 --out " + (scratch / "o").string(), scratch)
              .exit_code == 1);  // empty instance list
    fs::remove_all(scratch);
}

TEST_CASE("generate writes a complete dimacs graph with p=1") {
    const auto scratch = make_scratch("generate");
    const auto result = run_cli(
        "generate --problem mcp --spec n=10,p=1.0,seed=2 --out " + (scratch / "g").string(),
        scratch);
    CHECK(result.exit_code == 0);
    const std::string path = strip_newline(result.output);
    const std::string text = elena::read_text_file(path);
    int edge_lines = 0;
    for (std::size_t at = text.find("\ne "); at != std::string::npos;
         at = text.find("\ne ", at + 1)) {
        ++edge_lines;
    }
    CHECK(edge_lines == 45);  // 10 * 9 / 2

    // Determinism: generating the same spec twice gives identical bytes.
    const auto again = run_cli(
        "generate --problem mcp --spec n=10,p=1.0,seed=2 --out " + (scratch / "h").string(),
        scratch);
    CHECK(elena::read_text_file(strip_newline(again.output)) == text);
    fs::remove_all(scratch);
}

TEST_CASE("bench writes summary, stats and grid with matching provenance") {
    const auto scratch = make_scratch("bench");
    const std::string out = (scratch / "out").string();
    const auto result = run_cli(
        "bench --problem tsp --sizes 6,8 --algos elena --pops 8,10 --muts 0.2,0.5 "
        "--trials 2 --seed 5 --max-gens 15 --out " + out,
        scratch);
    CHECK(result.exit_code == 0);

    const std::string summary = elena::read_text_file(fs::path(out) / "summary.csv");
    CHECK(summary.find("instance,algorithm,seed,config,best,generations,wall_time_s") == 0);
    // 2 instances x 4 cells x 2 trials = 16 data rows.
    CHECK(std::count(summary.begin(), summary.end(), '\n') == 17);

    const std::string grid = elena::read_text_file(fs::path(out) / "grid.csv");
    CHECK(grid.find("instance,pop8_mut0.2,pop8_mut0.5,pop10_mut0.2,pop10_mut0.5") == 0);
    CHECK(std::count(grid.begin(), grid.end(), '\n') == 3);

    CHECK(fs::exists(fs::path(out) / "stats.csv"));

    // Every config digest echoed in the directory hashes to its file name.
    for (const auto& entry : fs::directory_iterator(out)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind("config-", 0) == 0) {
            const std::string digest = name.substr(7, 16);
            CHECK(elena::fnv1a_hex(elena::read_text_file(entry.path())) == digest);
        }
    }

    // Trajectory files are non-increasing in the objective column.
    for (const auto& entry : fs::directory_iterator(out)) {
        const std::string name = entry.path().filename().string();
        if (name.find(".trajectory.csv") == std::string::npos) {
            continue;
        }
        std::ifstream in(entry.path());
        std::string line;
        std::getline(in, line);  // header
        double previous = 0.0;
        bool first = true;
        while (std::getline(in, line)) {
            const double value = std::stod(line.substr(line.find(',') + 1));
            if (!first) {
                CHECK(value <= previous + 1e-12);
            }
            previous = value;
            first = false;
        }
    }
    fs::remove_all(scratch);
}

TEST_CASE("bench compares algorithms and emits an anova table") {
    const auto scratch = make_scratch("anova");
    const std::string out = (scratch / "out").string();
    const auto result = run_cli(
        "bench --problem mcp --sizes 12 --algos elena,greedy-clique --trials 3 "
        "--seed 2 --max-gens 20 --pop 12 --out " + out,
        scratch);
    CHECK(result.exit_code == 0);
    CHECK(fs::exists(fs::path(out) / "anova.csv"));
    const std::string anova = elena::read_text_file(fs::path(out) / "anova.csv");
    CHECK(anova.find("label,f_value,p_value,significant_comparisons") == 0);
    fs::remove_all(scratch);
}

}  // TEST_SUITE
