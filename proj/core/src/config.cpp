#include "elena/config.hpp"

#include <string>

#include "elena/errors.hpp"

namespace elena {

namespace {

void require(bool condition, const std::string& message) {
    if (!condition) {
        throw ValidationError("SolverConfig: " + message);
    }
}

}  // namespace

void SolverConfig::validate() const {
    require(population_size >= 1, "population_size must be >= 1");
    require(subpopulation_count >= 1, "subpopulation_count must be >= 1");
    require(population_size >= subpopulation_count,
            "population_size must be >= subpopulation_count");
    require(initial_mutation_rate > 0.0 && initial_mutation_rate <= 1.0,
            "initial_mutation_rate must be in (0, 1]");
    require(tags_in_range(initial_tags), "initial tag values must be in [0, 1]");
    require(delta_mr > 0.0 && delta_mr < 1.0, "delta_mr must be in (0, 1)");
    require(delta_ss > 0.0 && delta_ss < 1.0, "delta_ss must be in (0, 1)");
    require(delta_ca > 0.0 && delta_ca < 1.0, "delta_ca must be in (0, 1)");
    require(hgt_period >= 1, "hgt_period must be >= 1");
    require(hgt_probability >= 0.0 && hgt_probability <= 1.0,
            "hgt_probability must be in [0, 1]");
    require(stability_threshold >= 0.0 && stability_threshold <= 1.0,
            "stability_threshold must be in [0, 1]");
    require(min_segment_length >= 1, "min_segment_length must be >= 1");
    require(elitism_fraction >= 0.0 && elitism_fraction <= 1.0,
            "elitism_fraction must be in [0, 1]");
    require(patience >= 1, "patience must be >= 1");
    require(max_generations >= 1, "max_generations must be >= 1");
}

std::vector<int> SolverConfig::subpopulation_sizes() const {
    std::vector<int> sizes(subpopulation_count, population_size / subpopulation_count);
    const int remainder = population_size % subpopulation_count;
    for (int i = 0; i < remainder; ++i) {
        ++sizes[i];
    }
    return sizes;
}

}  // namespace elena
