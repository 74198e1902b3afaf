#pragma once

#include <vector>

#include "elena/operators.hpp"
#include "elena/problems.hpp"
#include "elena/rng.hpp"

namespace elena {

// Geometric cooling schedule for simulated annealing. The defaults stand in
// for the unspecified comparator configuration: unit starting temperature,
// 0.995 cooling, 100 proposals per level, floor 1e-4.
struct SaSchedule {
    double initial_temperature = 1.0;
    double cooling_rate = 0.995;
    int iterations_per_temperature = 100;
    double minimum_temperature = 1e-4;

    void validate() const;
};

// Greedy tour: from `start`, repeatedly visit the nearest unvisited city,
// ties broken toward the lower index.
std::vector<int> nearest_neighbor_tour(const TspInstance& instance, int start);

// Depot-anchored greedy customer order for VRP: from the depot, repeatedly
// move to the nearest unvisited customer. The returned permutation feeds the
// usual greedy route split.
std::vector<int> nearest_neighbor_customer_order(const VrpInstance& instance);

// Best-improvement 2-opt to local optimality (the engine's local search is
// the first-improvement variant; this is the stronger offline refiner).
std::vector<int> full_two_opt(std::vector<int> permutation,
                              const PermutationObjective& objective);
std::vector<int> full_two_opt(const TspInstance& instance, std::vector<int> tour);

struct SaResult {
    std::vector<int> permutation;
    double objective = 0.0;
};

// Metropolis search over the 2-opt/relocate neighborhood; worsening moves
// accepted with probability exp(-delta / T). Returns the best state visited,
// which may precede the final state.
SaResult simulated_annealing(const PermutationObjective& objective, std::size_t n,
                             const SaSchedule& schedule, RandomStream& rng);
SaResult simulated_annealing(const TspInstance& instance, const SaSchedule& schedule,
                             RandomStream& rng);
SaResult simulated_annealing(const VrpInstance& instance, const SaSchedule& schedule,
                             RandomStream& rng);

// Seed with the highest-degree vertex, then repeatedly add the
// highest-degree vertex adjacent to every member (ties toward lower index).
std::vector<int> greedy_clique(const McpInstance& instance);

}  // namespace elena
