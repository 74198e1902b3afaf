#pragma once

#include <cstdint>
#include <vector>

#include "elena/tags.hpp"

namespace elena {

// Every evolutionary hyperparameter in one value type. Defaults follow the
// framework's standard operating point: HGT gate probability 0.1, stability
// threshold 0.7, exchanges every 5 generations, tag steps 0.05, initial
// crossover affinity 0.7.
struct SolverConfig {
    int population_size = 50;
    int subpopulation_count = 4;
    double initial_mutation_rate = 0.2;
    EpigeneticTags initial_tags{};  // mr 0.5, ca 0.7, ss 0.5
    double delta_mr = 0.05;
    double delta_ss = 0.05;
    double delta_ca = 0.05;
    int hgt_period = 5;
    double hgt_probability = 0.1;
    double stability_threshold = 0.7;
    int min_segment_length = 2;
    double elitism_fraction = 0.1;
    int patience = 50;
    int max_generations = 500;
    std::uint64_t master_seed = 1;

    // Throws ValidationError naming the first offending field. Called before
    // any run starts.
    void validate() const;

    // Deterministic split of population_size across subpopulation_count
    // islands; sizes differ by at most one, earlier islands get the remainder.
    std::vector<int> subpopulation_sizes() const;

    bool operator==(const SolverConfig&) const = default;
};

}  // namespace elena
