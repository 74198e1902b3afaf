// Acceptance suite: one self-contained check per release criterion, each
// printing a single PASS/FAIL line. Run with no arguments for the full
// suite or pass criterion numbers to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "elena/baselines.hpp"
#include "elena/engine.hpp"
#include "elena/io.hpp"
#include "elena/operators.hpp"
#include "elena/problems.hpp"
#include "elena/stats.hpp"
#include "../oracles.hpp"

namespace {

using namespace elena;
namespace fs = std::filesystem;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

SolverConfig preset_15_02() {
    SolverConfig config;
    config.population_size = 15;
    config.initial_mutation_rate = 0.2;
    return config;
}

SolverConfig preset_300_05() {
    SolverConfig config;
    config.population_size = 300;
    config.initial_mutation_rate = 0.5;
    return config;
}

// 1. ELENA recovers the exhaustive optimum on 20 seeded micro TSP instances.
bool criterion_1(std::string& detail) {
    int optimal = 0;
    double slowest = 0.0;
    int index = 0;
    for (int n : {5, 6, 7, 8}) {
        for (std::uint64_t seed = 1; seed <= 5; ++seed, ++index) {
            const TspInstance instance = random_tsp(n, 100 * n + seed);
            TspBinding binding(instance);
            SolverConfig config = preset_15_02();
            config.master_seed = 1000 + index;

            const auto start = Clock::now();
            const RunResult result = evolve(binding, config);
            slowest = std::max(slowest, seconds_since(start));

            const double optimum = oracles::brute_force_tsp(instance);
            if (std::fabs(result.best_objective - optimum) <= 1e-9) {
                ++optimal;
            }
        }
    }
    std::ostringstream out;
    out << optimal << "/20 optimal, slowest run " << slowest << " s";
    detail = out.str();
    return optimal >= 19 && slowest < 30.0;
}

// 2. Mean ELENA tour beats mean NN + best-improvement 2-opt on 50 cities.
bool criterion_2(std::string& detail) {
    const auto start = Clock::now();
    double elena_sum = 0.0;
    double baseline_sum = 0.0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const TspInstance instance = random_tsp(50, 5000 + seed);
        TspBinding binding(instance);
        SolverConfig config = preset_15_02();
        config.master_seed = 42 + seed;
        elena_sum += evolve(binding, config).best_objective;

        const auto refined = full_two_opt(instance, nearest_neighbor_tour(instance, 0));
        baseline_sum += tour_length(instance, refined);
    }
    const double elapsed = seconds_since(start);
    std::ostringstream out;
    out << "mean elena " << elena_sum / 5.0 << " vs nn+2opt " << baseline_sum / 5.0 << ", "
        << elapsed << " s";
    detail = out.str();
    return elena_sum <= baseline_sum && elapsed < 300.0;
}

// 3. Feasible, near-best-known Augerat A-n32-k05 solution that beats NN.
bool criterion_3(std::string& detail) {
    const fs::path path = fs::path(ELENA_DATA_DIR) / "augerat" / "A-n32-k5.vrp";
    const VrpInstance instance = parse_vrp(read_text_file(path));
    if (!instance.best_known) {
        detail = "instance comment carries no best-known value";
        return false;
    }

    const auto start = Clock::now();
    VrpBinding binding(instance);
    SolverConfig config = preset_300_05();
    config.master_seed = 7;
    const RunResult result = evolve(binding, config);
    const double elapsed = seconds_since(start);

    const auto routes = decode_routes(instance, result.best_genome.sequence);
    bool feasible = routes.has_value();
    if (feasible) {
        feasible = routes->routes.size() <= static_cast<std::size_t>(instance.vehicle_count);
        for (int load : routes->loads) {
            feasible = feasible && load <= instance.capacity;
        }
    }

    const double nn_cost =
        vrp_objective(instance, nearest_neighbor_customer_order(instance));
    const double gap = result.best_objective / *instance.best_known - 1.0;

    std::ostringstream out;
    out << "cost " << result.best_objective << " vs best-known " << *instance.best_known
        << " (gap " << gap * 100.0 << "%), nn " << nn_cost << ", " << elapsed << " s";
    detail = out.str();
    return feasible && gap <= 0.15 && result.best_objective <= nn_cost && elapsed < 600.0;
}

// 4. MCP: brute-force optimality on small graphs, dominance over greedy at 100.
bool criterion_4(std::string& detail) {
    SolverConfig config;
    config.population_size = 50;
    config.initial_mutation_rate = 0.2;
    config.max_generations = 300;

    int oracle_hits = 0;
    for (int i = 0; i < 10; ++i) {
        const int n = 12 + 2 * (i % 5);  // 12..20
        const McpInstance graph = random_mcp(n, 0.5, 900 + i);
        McpBinding binding(graph);
        config.master_seed = 70 + i;
        const RunResult result = evolve(binding, config);
        const bool valid = is_clique(graph, result.best_genome.sequence) &&
                           is_duplicate_free(result.best_genome);
        const int found = static_cast<int>(result.best_genome.sequence.size());
        const int optimum = oracles::brute_force_max_clique(graph);
        if (valid && found == optimum) {
            ++oracle_hits;
        }
    }

    int dominance = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const McpInstance graph = random_mcp(100, 0.5, 4000 + seed);
        McpBinding binding(graph);
        config.master_seed = 80 + seed;
        const RunResult result = evolve(binding, config);
        const std::size_t greedy = greedy_clique(graph).size();
        if (is_clique(graph, result.best_genome.sequence) &&
            result.best_genome.sequence.size() >= greedy) {
            ++dominance;
        }
    }

    std::ostringstream out;
    out << oracle_hits << "/10 oracle-optimal (n<=20), " << dominance
        << "/5 >= greedy (n=100)";
    detail = out.str();
    return oracle_hits >= 8 && dominance >= 4;
}

// 5. 10,000 randomized operator applications keep tags and genomes valid.
bool criterion_5(std::string& detail) {
    SolverConfig config;
    RandomStream rng = split_stream(987, {});
    const TspInstance tsp = random_tsp(9, 44);
    TourLengthObjective objective(tsp);
    const McpInstance graph = random_mcp(12, 0.5, 44);

    long violations = 0;
    auto check = [&](const Genome& g, bool permutation) {
        if (permutation && !is_valid_permutation(g)) {
            ++violations;
        }
        if (!permutation && !is_duplicate_free(g)) {
            ++violations;
        }
        for (const auto& tags : g.tags) {
            if (!tags_in_range(tags)) {
                ++violations;
            }
        }
    };

    Genome a = new_genome(9, RepresentationKind::Permutation, EpigeneticTags{}, rng);
    Genome b = new_genome(9, RepresentationKind::Permutation, EpigeneticTags{}, rng);
    Genome clique = new_genome(12, RepresentationKind::VertexSet, EpigeneticTags{}, rng);

    int applications = 0;
    while (applications < 10000) {
        switch (applications % 4) {
            case 0:
                a = mutate(a, 0.95, rng, config);
                check(a, true);
                break;
            case 1: {
                CrossoverResult cross = order_crossover(a, b, rng, config);
                check(cross.child, true);
                b = std::move(cross.child);
                break;
            }
            case 2: {
                TwoOptResult improved = two_opt_improve(a, objective, config);
                Genome fed = apply_tag_feedback(std::move(improved.genome),
                                                improved.touched_lps, improved.improvement,
                                                config);
                check(fed, true);
                a = std::move(fed);
                break;
            }
            default: {
                clique = mcp_mutate(graph, std::move(clique), rng, config);
                clique = clique_improve(graph, std::move(clique), config);
                check(clique, false);
                break;
            }
        }
        ++applications;
    }

    std::ostringstream out;
    out << applications << " applications, " << violations << " violations";
    detail = out.str();
    return violations == 0;
}

// 6. Tag feedback conformance: exact clamped steps in the right direction.
bool criterion_6(std::string& detail) {
    RandomStream rng = split_stream(321, {});
    int failures = 0;
    for (int round = 0; round < 2000; ++round) {
        SolverConfig config;
        config.delta_mr = 0.01 + rng.next_double() * 0.5;
        config.delta_ss = 0.01 + rng.next_double() * 0.5;

        Genome g;
        g.kind = RepresentationKind::Permutation;
        const int n = 3 + static_cast<int>(rng.next_index(6));
        for (int lp = 0; lp < n; ++lp) {
            g.sequence.push_back(lp);
            g.tags.push_back(EpigeneticTags{rng.next_double(), rng.next_double(),
                                            rng.next_double()});
        }
        std::vector<int> touched;
        for (int lp = 0; lp < n; ++lp) {
            if (rng.bernoulli(0.5)) {
                touched.push_back(lp);
            }
        }
        const double improvement = rng.bernoulli(0.5) ? rng.next_double() : -rng.next_double();
        const Genome after = apply_tag_feedback(g, touched, improvement, config);

        for (int lp = 0; lp < n; ++lp) {
            const auto& before_tags = g.tags[lp];
            const auto& after_tags = after.tags[lp];
            const bool is_touched =
                std::find(touched.begin(), touched.end(), lp) != touched.end();
            double expected_mr = before_tags.mutation_resistance;
            double expected_ss = before_tags.stability_score;
            if (is_touched) {
                if (improvement > 0.0) {
                    expected_mr = std::min(1.0, expected_mr + config.delta_mr);
                    expected_ss = std::min(1.0, expected_ss + config.delta_ss);
                } else {
                    expected_mr = std::max(0.0, expected_mr - config.delta_mr);
                    expected_ss = std::max(0.0, expected_ss - config.delta_ss);
                }
            }
            if (after_tags.mutation_resistance != expected_mr ||
                after_tags.stability_score != expected_ss ||
                after_tags.crossover_affinity != before_tags.crossover_affinity) {
                ++failures;
            }
            if (is_touched && improvement > 0.0 &&
                (after_tags.mutation_resistance < before_tags.mutation_resistance ||
                 after_tags.stability_score < before_tags.stability_score)) {
                ++failures;
            }
            if (is_touched && improvement <= 0.0 &&
                (after_tags.mutation_resistance > before_tags.mutation_resistance ||
                 after_tags.stability_score > before_tags.stability_score)) {
                ++failures;
            }
        }
    }
    std::ostringstream out;
    out << "2000 randomized applications, " << failures << " mismatches";
    detail = out.str();
    return failures == 0;
}

// 7. HGT schedule: exchanges exactly every 5 generations; probability 0 is
// indistinguishable from no HGT at all.
bool criterion_7(std::string& detail) {
    const TspInstance instance = random_tsp(20, 777);
    TspBinding binding(instance);
    SolverConfig config;
    config.population_size = 16;
    config.max_generations = 23;
    config.patience = 1000;
    config.master_seed = 5;

    const RunResult scheduled = evolve(binding, config);
    const std::vector<int> expected{5, 10, 15, 20};
    const bool schedule_ok = scheduled.hgt_generations == expected;

    SolverConfig gated = config;
    gated.hgt_probability = 0.0;
    const RunResult zero_probability = evolve(binding, gated);
    EvolveOptions disabled;
    disabled.disable_hgt = true;
    const RunResult no_hgt = evolve(binding, gated, disabled);

    const bool identical = zero_probability.best_genome == no_hgt.best_genome &&
                           zero_probability.best_objective == no_hgt.best_objective &&
                           zero_probability.trajectory == no_hgt.trajectory &&
                           zero_probability.generations_run == no_hgt.generations_run &&
                           zero_probability.last_improvement_generation ==
                               no_hgt.last_improvement_generation;

    std::ostringstream out;
    out << "exchanges at {";
    for (std::size_t i = 0; i < scheduled.hgt_generations.size(); ++i) {
        out << (i ? "," : "") << scheduled.hgt_generations[i];
    }
    out << "}, p=0 run " << (identical ? "matches" : "differs from") << " no-HGT run";
    detail = out.str();
    return schedule_ok && identical;
}

// 8. ANOVA golden fixture.
bool criterion_8(std::string& detail) {
    const std::vector<TrialGroup> groups{
        {"a", {1, 2, 3}}, {"b", {2, 3, 4}}, {"c", {3, 4, 5}}};
    const AnovaResult result = anova_oneway(groups);
    std::ostringstream out;
    out << "F " << result.f << ", p " << result.p;
    detail = out.str();
    return std::fabs(result.f - 3.0) <= 1e-9 && std::fabs(result.p - 0.125) <= 1e-9;
}

// 9. Byte-identical benchmark outputs across re-runs and worker counts.
bool criterion_9(std::string& detail) {
    const fs::path scratch = fs::temp_directory_path() / "elena-acceptance-c9";
    fs::remove_all(scratch);
    fs::create_directories(scratch);

    auto run_bench = [&](const std::string& out_dir, int workers) {
        std::ostringstream command;
        command << ELENA_CLI_BIN
                << " bench --problem tsp --sizes 10 --algos elena --trials 2 --seed 3"
                << " --max-gens 60 --workers " << workers << " --out "
                << (scratch / out_dir).string() << " > /dev/null 2>&1";
        const int status = std::system(command.str().c_str());
        return WIFEXITED(status) && WEXITSTATUS(status) == 0;
    };

    if (!run_bench("w1", 1) || !run_bench("w4", 4) || !run_bench("w1-again", 1)) {
        detail = "bench invocation failed";
        fs::remove_all(scratch);
        return false;
    }

    auto dir_files = [](const fs::path& dir) {
        std::set<std::string> names;
        for (const auto& entry : fs::directory_iterator(dir)) {
            names.insert(entry.path().filename().string());
        }
        return names;
    };
    auto dirs_equal = [&](const fs::path& a, const fs::path& b) {
        const auto names_a = dir_files(a);
        if (names_a != dir_files(b)) {
            return false;
        }
        for (const auto& name : names_a) {
            if (read_text_file(a / name) != read_text_file(b / name)) {
                return false;
            }
        }
        return true;
    };

    const bool workers_match = dirs_equal(scratch / "w1", scratch / "w4");
    const bool reruns_match = dirs_equal(scratch / "w1", scratch / "w1-again");
    fs::remove_all(scratch);

    std::ostringstream out;
    out << "workers 1 vs 4 " << (workers_match ? "identical" : "differ") << ", re-run "
        << (reruns_match ? "identical" : "differs");
    detail = out.str();
    return workers_match && reruns_match;
}

// 10. Early stopping terminates promptly on a trivially convergent instance.
bool criterion_10(std::string& detail) {
    TspInstance instance;
    instance.coordinates = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
    TspBinding binding(instance);
    SolverConfig config;  // default patience 50
    config.population_size = 12;
    config.master_seed = 9;
    const RunResult result = evolve(binding, config);
    std::ostringstream out;
    out << "stopped at generation " << result.generations_run << ", last improvement at "
        << result.last_improvement_generation << ", patience " << config.patience;
    detail = out.str();
    return result.generations_run <=
           result.last_improvement_generation + config.patience + 1;
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<int, std::function<bool(std::string&)>>> criteria{
        {1, criterion_1}, {2, criterion_2}, {3, criterion_3}, {4, criterion_4},
        {5, criterion_5}, {6, criterion_6}, {7, criterion_7}, {8, criterion_8},
        {9, criterion_9}, {10, criterion_10}};

    std::set<int> selected;
    for (int i = 1; i < argc; ++i) {
        selected.insert(std::atoi(argv[i]));
    }

    int failures = 0;
    for (const auto& [number, check] : criteria) {
        if (!selected.empty() && !selected.count(number)) {
            continue;
        }
        std::string detail;
        bool passed = false;
        try {
            passed = check(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::cout << "criterion " << number << ": " << (passed ? "PASS" : "FAIL") << " ("
                  << detail << ")" << std::endl;
        if (!passed) {
            ++failures;
        }
    }
    return failures == 0 ? 0 : 1;
}
