// elena command-line benchmark harness: solve single instances, run
// benchmark matrices, and generate instance files.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "elena/baselines.hpp"
#include "elena/engine.hpp"
#include "elena/errors.hpp"
#include "elena/io.hpp"
#include "elena/problems.hpp"
#include "elena/stats.hpp"

namespace {

using namespace elena;

constexpr std::uint32_t kSaStreamLabel = 20;
constexpr std::uint32_t kBenchInstanceLabel = 30;
constexpr std::uint32_t kBenchTrialLabel = 31;

enum class ProblemKind { Tsp, Vrp, Mcp };

ProblemKind parse_problem(const std::string& name) {
    if (name == "tsp") return ProblemKind::Tsp;
    if (name == "vrp") return ProblemKind::Vrp;
    if (name == "mcp") return ProblemKind::Mcp;
    throw ValidationError("unknown problem: " + name);
}

struct LoadedInstance {
    ProblemKind kind = ProblemKind::Tsp;
    std::string id;
    std::variant<TspInstance, VrpInstance, McpInstance> data;
};

// All SolverConfig knobs as CLI overrides, applied on top of an optional
// named preset.
struct ConfigCli {
    std::string preset;
    std::optional<int> pop, subpops, hgt_period, min_segment, patience, max_gens;
    std::optional<double> mut, delta_mr, delta_ss, delta_ca, hgt_prob, stability, elitism;
    std::optional<double> init_mr, init_ca, init_ss;
    std::uint64_t seed = 1;

    void register_options(CLI::App* app) {
        app->add_option("--preset", preset,
                        "Named config: elena-15-0.2, elena-50-0.5, elena-300-0.5");
        app->add_option("--pop", pop, "Population size across all subpopulations");
        app->add_option("--mut", mut, "Initial mutation rate in (0,1]");
        app->add_option("--subpops", subpops, "Subpopulation (island) count");
        app->add_option("--delta-mr", delta_mr, "Mutation resistance step");
        app->add_option("--delta-ss", delta_ss, "Stability score step");
        app->add_option("--delta-ca", delta_ca, "Crossover affinity step");
        app->add_option("--hgt-period", hgt_period, "Generations between HGT exchanges");
        app->add_option("--hgt-prob", hgt_prob, "Per (donor,recipient) transfer probability");
        app->add_option("--stability-threshold", stability, "HGT stability threshold");
        app->add_option("--min-segment", min_segment, "Minimum stable segment length");
        app->add_option("--elitism", elitism, "Elite fraction per subpopulation");
        app->add_option("--patience", patience, "Early-stop patience in generations");
        app->add_option("--max-gens", max_gens, "Generation budget");
        app->add_option("--init-mr", init_mr, "Initial mutation resistance");
        app->add_option("--init-ca", init_ca, "Initial crossover affinity");
        app->add_option("--init-ss", init_ss, "Initial stability score");
        app->add_option("--seed", seed, "Master seed");
    }

    SolverConfig build() const {
        SolverConfig config;
        if (!preset.empty()) {
            if (preset == "elena-15-0.2") {
                config.population_size = 15;
                config.initial_mutation_rate = 0.2;
            } else if (preset == "elena-50-0.5") {
                config.population_size = 50;
                config.initial_mutation_rate = 0.5;
            } else if (preset == "elena-300-0.5") {
                config.population_size = 300;
                config.initial_mutation_rate = 0.5;
            } else {
                throw ValidationError("unknown preset: " + preset);
            }
        }
        if (pop) config.population_size = *pop;
        if (mut) config.initial_mutation_rate = *mut;
        if (subpops) config.subpopulation_count = *subpops;
        if (delta_mr) config.delta_mr = *delta_mr;
        if (delta_ss) config.delta_ss = *delta_ss;
        if (delta_ca) config.delta_ca = *delta_ca;
        if (hgt_period) config.hgt_period = *hgt_period;
        if (hgt_prob) config.hgt_probability = *hgt_prob;
        if (stability) config.stability_threshold = *stability;
        if (min_segment) config.min_segment_length = *min_segment;
        if (elitism) config.elitism_fraction = *elitism;
        if (patience) config.patience = *patience;
        if (max_gens) config.max_generations = *max_gens;
        if (init_mr) config.initial_tags.mutation_resistance = *init_mr;
        if (init_ca) config.initial_tags.crossover_affinity = *init_ca;
        if (init_ss) config.initial_tags.stability_score = *init_ss;
        config.master_seed = seed;
        config.validate();
        return config;
    }
};

std::map<std::string, std::string> parse_spec(const std::string& spec) {
    std::map<std::string, std::string> kv;
    std::size_t begin = 0;
    while (begin <= spec.size()) {
        std::size_t end = spec.find(',', begin);
        if (end == std::string::npos) {
            end = spec.size();
        }
        const std::string item = spec.substr(begin, end - begin);
        if (!item.empty()) {
            const std::size_t eq = item.find('=');
            if (eq == std::string::npos) {
                throw ValidationError("generator spec entries must be key=value: " + item);
            }
            kv[item.substr(0, eq)] = item.substr(eq + 1);
        }
        begin = end + 1;
        if (end == spec.size()) {
            break;
        }
    }
    return kv;
}

long long spec_int(const std::map<std::string, std::string>& kv, const std::string& key,
                   long long fallback) {
    const auto it = kv.find(key);
    if (it == kv.end()) {
        return fallback;
    }
    try {
        return std::stoll(it->second);
    } catch (...) {
        throw ValidationError("generator spec: " + key + " must be an integer");
    }
}

double spec_real(const std::map<std::string, std::string>& kv, const std::string& key,
                 double fallback) {
    const auto it = kv.find(key);
    if (it == kv.end()) {
        return fallback;
    }
    try {
        return std::stod(it->second);
    } catch (...) {
        throw ValidationError("generator spec: " + key + " must be a number");
    }
}

Metric parse_metric_name(const std::string& name) {
    if (name == "real") return Metric::RealEuclidean;
    if (name == "rounded") return Metric::RoundedEuclidean;
    throw ValidationError("unknown metric: " + name + " (expected real or rounded)");
}

LoadedInstance generate_instance(ProblemKind kind, const std::string& spec_text) {
    const auto kv = parse_spec(spec_text);
    const auto seed = static_cast<std::uint64_t>(spec_int(kv, "seed", 1));
    LoadedInstance loaded;
    loaded.kind = kind;
    switch (kind) {
        case ProblemKind::Tsp: {
            const int n = static_cast<int>(spec_int(kv, "n", 10));
            Metric metric = Metric::RealEuclidean;
            if (kv.count("metric")) {
                metric = parse_metric_name(kv.at("metric"));
            }
            TspInstance instance = random_tsp(n, seed, metric);
            loaded.id = instance.name;
            loaded.data = std::move(instance);
            break;
        }
        case ProblemKind::Vrp: {
            VrpGeneratorSpec gen;
            gen.customers = static_cast<int>(spec_int(kv, "n", 10));
            gen.vehicles = static_cast<int>(spec_int(kv, "vehicles", 2));
            gen.capacity = static_cast<int>(spec_int(kv, "capacity", 30));
            gen.demand_min = static_cast<int>(spec_int(kv, "demand-min", 1));
            gen.demand_max = static_cast<int>(spec_int(kv, "demand-max", 10));
            if (kv.count("metric")) {
                gen.metric = parse_metric_name(kv.at("metric"));
            }
            VrpInstance instance = random_vrp(gen, seed);
            loaded.id = instance.name;
            loaded.data = std::move(instance);
            break;
        }
        case ProblemKind::Mcp: {
            const int n = static_cast<int>(spec_int(kv, "n", 10));
            const double p = spec_real(kv, "p", 0.5);
            loaded.id = "mcp-n" + std::to_string(n) + "-p" + format_double(p) + "-s" +
                        std::to_string(seed);
            loaded.data = random_mcp(n, p, seed);
            break;
        }
    }
    return loaded;
}

LoadedInstance load_instance_file(ProblemKind kind, const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) {
        throw ValidationError("instance file not found: " + path.string());
    }
    const std::string text = read_text_file(path);
    LoadedInstance loaded;
    loaded.kind = kind;
    loaded.id = path.stem().string();
    switch (kind) {
        case ProblemKind::Tsp:
            loaded.data = parse_tsp(text);
            break;
        case ProblemKind::Vrp:
            loaded.data = parse_vrp(text);
            break;
        case ProblemKind::Mcp:
            loaded.data = parse_dimacs_clq(text);
            break;
    }
    return loaded;
}

void override_metric(LoadedInstance& loaded, const std::string& metric_name) {
    if (metric_name.empty()) {
        return;
    }
    const Metric metric = parse_metric_name(metric_name);
    if (auto* tsp = std::get_if<TspInstance>(&loaded.data)) {
        tsp->metric = metric;
    } else if (auto* vrp = std::get_if<VrpInstance>(&loaded.data)) {
        vrp->metric = metric;
    } else {
        throw ValidationError("--metric does not apply to MCP instances");
    }
}

struct RunOutput {
    double best_objective = 0.0;
    int generations = 0;
    std::vector<double> trajectory;
    double wall_time_seconds = 0.0;
};

bool algo_supported(ProblemKind kind, const std::string& algo) {
    if (algo == "elena") return true;
    if (algo == "greedy-clique") return kind == ProblemKind::Mcp;
    if (algo == "nn" || algo == "nn2opt" || algo == "sa") return kind != ProblemKind::Mcp;
    return false;
}

RunOutput run_algorithm(const LoadedInstance& instance, const std::string& algo,
                        const SolverConfig& config, int workers, bool verbose) {
    const auto start = std::chrono::steady_clock::now();
    RunOutput out;

    auto finish = [&](double objective, std::vector<double> trajectory, int generations) {
        out.best_objective = objective;
        out.trajectory = std::move(trajectory);
        out.generations = generations;
        out.wall_time_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };

    if (algo == "elena") {
        EvolveOptions options;
        options.workers = workers;
        if (verbose) {
            options.progress = [](int generation, double best) {
                std::cerr << "gen " << generation << " best " << format_double(best) << "\n";
            };
        }
        RunResult result;
        if (const auto* tsp = std::get_if<TspInstance>(&instance.data)) {
            TspBinding binding(*tsp);
            result = evolve(binding, config, options);
        } else if (const auto* vrp = std::get_if<VrpInstance>(&instance.data)) {
            VrpBinding binding(*vrp);
            result = evolve(binding, config, options);
        } else {
            McpBinding binding(std::get<McpInstance>(instance.data));
            result = evolve(binding, config, options);
        }
        finish(result.best_objective, std::move(result.trajectory), result.generations_run);
        return out;
    }

    if (algo == "nn") {
        if (const auto* tsp = std::get_if<TspInstance>(&instance.data)) {
            const auto tour = nearest_neighbor_tour(*tsp, 0);
            const double objective = tour_length(*tsp, tour);
            finish(objective, {objective}, 0);
        } else {
            const auto& vrp = std::get<VrpInstance>(instance.data);
            const auto order = nearest_neighbor_customer_order(vrp);
            const double objective = vrp_objective(vrp, order);
            finish(objective, {objective}, 0);
        }
        return out;
    }

    if (algo == "nn2opt") {
        if (const auto* tsp = std::get_if<TspInstance>(&instance.data)) {
            const auto tour = full_two_opt(*tsp, nearest_neighbor_tour(*tsp, 0));
            const double objective = tour_length(*tsp, tour);
            finish(objective, {objective}, 0);
        } else {
            const auto& vrp = std::get<VrpInstance>(instance.data);
            VrpRouteObjective objective(vrp);
            const auto order = full_two_opt(nearest_neighbor_customer_order(vrp), objective);
            finish(objective.value(order), {objective.value(order)}, 0);
        }
        return out;
    }

    if (algo == "sa") {
        RandomStream rng = split_stream(config.master_seed, {kSaStreamLabel});
        SaSchedule schedule;
        SaResult result;
        if (const auto* tsp = std::get_if<TspInstance>(&instance.data)) {
            result = simulated_annealing(*tsp, schedule, rng);
        } else {
            result = simulated_annealing(std::get<VrpInstance>(instance.data), schedule, rng);
        }
        finish(result.objective, {result.objective}, 0);
        return out;
    }

    if (algo == "greedy-clique") {
        const auto clique = greedy_clique(std::get<McpInstance>(instance.data));
        const double objective = -static_cast<double>(clique.size());
        finish(objective, {objective}, 0);
        return out;
    }

    throw ValidationError("unknown algorithm: " + algo);
}

std::filesystem::path default_out_dir(const std::string& cli_value) {
    if (!cli_value.empty()) {
        return cli_value;
    }
    if (const char* env = std::getenv("ELENA_OUT_DIR")) {
        if (*env) {
            return env;
        }
    }
    return "elena-out";
}

ResultRecord make_record(const LoadedInstance& instance, const std::string& algo,
                         const SolverConfig& config, const RunOutput& run, bool record_timing) {
    ResultRecord record;
    record.instance_id = instance.id;
    record.algorithm_id = algo;
    record.seed = config.master_seed;
    record.config_digest = config_digest(config);
    record.best_objective = run.best_objective;
    record.generations = run.generations;
    // Measured wall time goes to the summary only on request so that re-runs
    // with identical inputs produce byte-identical files.
    record.wall_time_seconds = record_timing ? run.wall_time_seconds : 0.0;
    record.trajectory_file = "";
    return record;
}

// ---------------------------------------------------------------------------

struct SolveArgs {
    std::string problem;
    std::string instance_path;
    std::string generate_spec;
    std::string algo = "elena";
    std::string out_dir;
    std::string metric;
    std::string timing = "none";
    int workers = 1;
    bool verbose = false;
    ConfigCli config;
};

int cmd_solve(const SolveArgs& args) {
    const ProblemKind kind = parse_problem(args.problem);
    if (args.instance_path.empty() == args.generate_spec.empty()) {
        throw ValidationError("exactly one of --instance or --generate is required");
    }
    if (!algo_supported(kind, args.algo)) {
        throw ValidationError("algorithm '" + args.algo + "' does not apply to " + args.problem);
    }
    const SolverConfig config = args.config.build();
    const bool record_timing = args.timing == "real";
    if (args.timing != "real" && args.timing != "none") {
        throw ValidationError("--timing must be real or none");
    }

    LoadedInstance instance = args.instance_path.empty()
                                  ? generate_instance(kind, args.generate_spec)
                                  : load_instance_file(kind, args.instance_path);
    override_metric(instance, args.metric);

    const RunOutput run = run_algorithm(instance, args.algo, config, args.workers, args.verbose);

    ResultsBundle bundle;
    ResultRecord record = make_record(instance, args.algo, config, run, record_timing);
    record.trajectory_file = trajectory_file_name(record);
    bundle.trajectories[record.trajectory_file] = run.trajectory;
    bundle.configs[record.config_digest] = config_json(config);
    bundle.records.push_back(record);
    write_results(bundle, default_out_dir(args.out_dir));

    std::cout << format_double(run.best_objective) << "\n";
    return 0;
}

// ---------------------------------------------------------------------------

struct BenchArgs {
    std::string problem;
    std::vector<std::string> instance_paths;
    std::vector<std::string> generate_specs;
    std::vector<int> sizes;
    std::vector<std::string> algos{"elena"};
    std::vector<int> pops;
    std::vector<double> muts;
    int trials = 1;
    std::uint64_t gen_seed = 1;
    double mcp_p = 0.5;
    std::string out_dir;
    std::string metric;
    std::string timing = "none";
    int workers = 1;
    ConfigCli config;
};

std::string size_spec(ProblemKind kind, int size, std::uint64_t seed, double mcp_p) {
    std::string spec = "n=" + std::to_string(size) + ",seed=" + std::to_string(seed);
    if (kind == ProblemKind::Mcp) {
        spec += ",p=" + format_double(mcp_p);
    }
    return spec;
}

int cmd_bench(const BenchArgs& args) {
    const ProblemKind kind = parse_problem(args.problem);
    if (args.trials < 1) {
        throw ValidationError("--trials must be >= 1");
    }
    if (args.timing != "real" && args.timing != "none") {
        throw ValidationError("--timing must be real or none");
    }
    const bool record_timing = args.timing == "real";
    const SolverConfig base_config = args.config.build();

    // Resolve the full instance list before any cell executes.
    std::vector<LoadedInstance> instances;
    for (const auto& path : args.instance_paths) {
        instances.push_back(load_instance_file(kind, path));
    }
    for (const auto& spec : args.generate_specs) {
        instances.push_back(generate_instance(kind, spec));
    }
    for (int size : args.sizes) {
        const std::uint64_t seed =
            split_stream(args.gen_seed, {kBenchInstanceLabel, static_cast<std::uint32_t>(size)})
                .next_u64();
        instances.push_back(generate_instance(kind, size_spec(kind, size, seed, args.mcp_p)));
    }
    if (instances.empty()) {
        throw ValidationError("benchmark plan has no instances");
    }
    for (auto& instance : instances) {
        override_metric(instance, args.metric);
    }
    for (const auto& algo : args.algos) {
        if (!algo_supported(kind, algo)) {
            throw ValidationError("algorithm '" + algo + "' does not apply to " + args.problem);
        }
    }

    const std::vector<int> pops = args.pops.empty()
                                      ? std::vector<int>{base_config.population_size}
                                      : args.pops;
    const std::vector<double> muts =
        args.muts.empty() ? std::vector<double>{base_config.initial_mutation_rate} : args.muts;
    const bool swept = pops.size() > 1 || muts.size() > 1;

    ResultsBundle bundle;
    std::vector<std::string> failures;
    // cell id -> per-trial best objectives, preserving plan order for the grid
    std::map<std::string, std::vector<double>> cell_best;

    std::uint32_t cell_index = 0;
    for (const auto& instance : instances) {
        for (const auto& algo : args.algos) {
            for (int pop : pops) {
                for (double mut : muts) {
                    SolverConfig config = base_config;
                    config.population_size = pop;
                    config.initial_mutation_rate = mut;
                    std::string algo_id = algo;
                    if (swept && algo == "elena") {
                        algo_id += "-p" + std::to_string(pop) + "-m" + format_double(mut);
                    }
                    for (int trial = 0; trial < args.trials; ++trial) {
                        config.master_seed =
                            split_stream(base_config.master_seed,
                                         {kBenchTrialLabel, cell_index,
                                          static_cast<std::uint32_t>(trial)})
                                .next_u64();
                        config.validate();
                        try {
                            const RunOutput run =
                                run_algorithm(instance, algo, config, args.workers, false);
                            ResultRecord record =
                                make_record(instance, algo_id, config, run, record_timing);
                            record.trajectory_file = trajectory_file_name(record);
                            bundle.trajectories[record.trajectory_file] = run.trajectory;
                            bundle.configs[record.config_digest] = config_json(config);
                            bundle.records.push_back(record);
                            cell_best[instance.id + "\x1f" + algo_id].push_back(
                                run.best_objective);
                        } catch (const std::exception& e) {
                            failures.push_back(instance.id + "/" + algo_id + "/trial" +
                                               std::to_string(trial) + ": " + e.what());
                        }
                    }
                    ++cell_index;
                    if (!swept || algo != "elena") {
                        break;  // pops x muts sweep applies to elena only
                    }
                }
                if (!swept || algo != "elena") {
                    break;
                }
            }
        }
    }

    const std::filesystem::path out = default_out_dir(args.out_dir);
    write_results(bundle, out);

    // Per-cell statistics.
    {
        std::ostringstream stats_csv;
        stats_csv << "instance,algorithm,trials,mean,std,cv\n";
        for (const auto& [key, values] : cell_best) {
            const std::size_t sep = key.find('\x1f');
            const std::string instance_id = key.substr(0, sep);
            const std::string algo_id = key.substr(sep + 1);
            stats_csv << csv_quote(instance_id) << "," << csv_quote(algo_id) << ","
                      << values.size() << ",";
            if (values.size() >= 2) {
                const SummaryStats s = summarize(TrialGroup{algo_id, values});
                stats_csv << format_double(s.mean) << "," << format_double(s.stddev) << ","
                          << (s.cv_defined ? format_double(s.cv) : "") << "\n";
            } else {
                stats_csv << format_double(values.front()) << ",,\n";
            }
        }
        write_text_file(out / "stats.csv", stats_csv.str());
    }

    // Grid of mean best objective, instances x (pop, mut) pairs.
    if (swept) {
        std::ostringstream grid;
        grid << "instance";
        for (int pop : pops) {
            for (double mut : muts) {
                grid << ",pop" << pop << "_mut" << format_double(mut);
            }
        }
        grid << "\n";
        for (const auto& instance : instances) {
            grid << csv_quote(instance.id);
            for (int pop : pops) {
                for (double mut : muts) {
                    const std::string algo_id =
                        "elena-p" + std::to_string(pop) + "-m" + format_double(mut);
                    const auto it = cell_best.find(instance.id + "\x1f" + algo_id);
                    if (it == cell_best.end() || it->second.empty()) {
                        grid << ",";
                    } else {
                        double sum = 0.0;
                        for (double v : it->second) {
                            sum += v;
                        }
                        grid << ","
                             << format_double(sum / static_cast<double>(it->second.size()));
                    }
                }
            }
            grid << "\n";
        }
        write_text_file(out / "grid.csv", grid.str());
    }

    // One-way ANOVA across algorithms per instance, when testable.
    {
        std::vector<SignificanceRow> rows;
        for (const auto& instance : instances) {
            std::vector<TrialGroup> groups;
            for (const auto& [key, values] : cell_best) {
                const std::size_t sep = key.find('\x1f');
                if (key.substr(0, sep) == instance.id && values.size() >= 2) {
                    groups.push_back(TrialGroup{key.substr(sep + 1), values});
                }
            }
            if (groups.size() < 2) {
                continue;
            }
            SignificanceRow row;
            row.label = instance.id;
            const AnovaResult anova = anova_oneway(groups);
            row.f = anova.f;
            row.p = anova.p;
            for (const auto& comparison : welch_pairwise(groups)) {
                if (comparison.significant) {
                    row.significant_pairs.push_back(comparison.label_a + " vs " +
                                                    comparison.label_b);
                }
            }
            rows.push_back(std::move(row));
        }
        if (!rows.empty()) {
            write_text_file(out / "anova.csv", significance_table_csv(rows));
        }
    }

    if (!failures.empty()) {
        std::ostringstream report;
        for (const auto& failure : failures) {
            report << failure << "\n";
        }
        write_text_file(out / "failures.txt", report.str());
        std::cerr << failures.size() << " cell(s) failed; see failures.txt\n";
        return 2;
    }
    return 0;
}

// ---------------------------------------------------------------------------

struct GenerateArgs {
    std::string problem;
    std::string spec;
    std::string out_dir;
};

int cmd_generate(const GenerateArgs& args) {
    const ProblemKind kind = parse_problem(args.problem);
    LoadedInstance instance = generate_instance(kind, args.spec);
    const std::filesystem::path out = default_out_dir(args.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(out, ec);
    if (ec) {
        throw IoError("cannot create output directory: " + out.string());
    }

    std::filesystem::path path;
    if (const auto* tsp = std::get_if<TspInstance>(&instance.data)) {
        path = out / (instance.id + ".tsp");
        write_text_file(path, write_tsp(*tsp, "generated unit-square instance"));
    } else if (const auto* vrp = std::get_if<VrpInstance>(&instance.data)) {
        path = out / (instance.id + ".vrp");
        write_text_file(path, write_vrp(*vrp));
        if (!vrp->fleet_feasible()) {
            std::cerr << "warning: total demand exceeds fleet capacity\n";
        }
    } else {
        const auto& mcp = std::get<McpInstance>(instance.data);
        path = out / (instance.id + ".clq");
        write_text_file(path, write_dimacs_clq(mcp, instance.id));
    }
    std::cout << path.string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"elena: epigenetic evolutionary solver and benchmark harness"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    CLI::App* solve = app.add_subcommand("solve", "Run one algorithm on one instance");
    solve->add_option("--problem", solve_args.problem, "tsp, vrp or mcp")->required();
    solve->add_option("--instance", solve_args.instance_path, "Instance file path");
    solve->add_option("--generate", solve_args.generate_spec,
                      "Generator spec, e.g. n=10,seed=42[,p=0.5][,vehicles=2,capacity=30]");
    solve->add_option("--algo", solve_args.algo, "elena, nn, nn2opt, sa, greedy-clique");
    solve->add_option("--out", solve_args.out_dir, "Output directory (default $ELENA_OUT_DIR)");
    solve->add_option("--metric", solve_args.metric, "Distance override: real or rounded");
    solve->add_option("--timing", solve_args.timing,
                      "real records wall time in the summary; none (default) keeps outputs "
                      "byte-reproducible");
    solve->add_option("--workers", solve_args.workers, "Worker threads (results independent)");
    solve->add_flag("--verbose", solve_args.verbose, "Per-generation progress on stderr");
    solve_args.config.register_options(solve);

    BenchArgs bench_args;
    CLI::App* bench = app.add_subcommand("bench", "Run a benchmark matrix");
    bench->add_option("--problem", bench_args.problem, "tsp, vrp or mcp")->required();
    bench->add_option("--instance", bench_args.instance_paths, "Instance file (repeatable)");
    bench->add_option("--generate", bench_args.generate_specs, "Generator spec (repeatable)");
    bench->add_option("--sizes", bench_args.sizes, "Generated instance sizes")->delimiter(',');
    bench->add_option("--algos", bench_args.algos, "Algorithms to compare")->delimiter(',');
    bench->add_option("--pops", bench_args.pops, "Population sweep values")->delimiter(',');
    bench->add_option("--muts", bench_args.muts, "Mutation-rate sweep values")->delimiter(',');
    bench->add_option("--trials", bench_args.trials, "Trials per cell");
    bench->add_option("--gen-seed", bench_args.gen_seed, "Seed for --sizes instances");
    bench->add_option("--p", bench_args.mcp_p, "Edge probability for generated MCP graphs");
    bench->add_option("--out", bench_args.out_dir, "Output directory (default $ELENA_OUT_DIR)");
    bench->add_option("--metric", bench_args.metric, "Distance override: real or rounded");
    bench->add_option("--timing", bench_args.timing, "real or none (default none)");
    bench->add_option("--workers", bench_args.workers, "Worker threads per run");
    bench_args.config.register_options(bench);

    GenerateArgs generate_args;
    CLI::App* generate = app.add_subcommand("generate", "Write an instance file");
    generate->add_option("--problem", generate_args.problem, "tsp, vrp or mcp")->required();
    generate->add_option("--spec", generate_args.spec, "Generator spec")->required();
    generate->add_option("--out", generate_args.out_dir, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);  // --help
        }
        app.exit(e);
        return 1;
    }

    try {
        if (solve->parsed()) {
            return cmd_solve(solve_args);
        }
        if (bench->parsed()) {
            return cmd_bench(bench_args);
        }
        return cmd_generate(generate_args);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
