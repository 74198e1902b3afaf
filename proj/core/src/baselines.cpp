#include "elena/baselines.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>

#include "elena/errors.hpp"

namespace elena {

void SaSchedule::validate() const {
    if (initial_temperature <= 0.0 || minimum_temperature <= 0.0 ||
        minimum_temperature > initial_temperature) {
        throw ValidationError("SaSchedule: temperatures must satisfy 0 < T_min <= T_0");
    }
    if (cooling_rate <= 0.0 || cooling_rate >= 1.0) {
        throw ValidationError("SaSchedule: cooling_rate must be in (0, 1)");
    }
    if (iterations_per_temperature < 1) {
        throw ValidationError("SaSchedule: iterations_per_temperature must be >= 1");
    }
}

std::vector<int> nearest_neighbor_tour(const TspInstance& instance, int start) {
    instance.validate();
    const int n = static_cast<int>(instance.city_count());
    if (start < 0 || start >= n) {
        throw ValidationError("nearest_neighbor_tour: start city out of range");
    }
    std::vector<int> tour;
    tour.reserve(n);
    std::vector<bool> visited(n, false);
    int current = start;
    tour.push_back(current);
    visited[current] = true;
    for (int step = 1; step < n; ++step) {
        int best = -1;
        double best_distance = std::numeric_limits<double>::infinity();
        for (int city = 0; city < n; ++city) {
            if (visited[city]) {
                continue;
            }
            const auto& a = instance.coordinates[current];
            const auto& b = instance.coordinates[city];
            const double d = metric_distance(instance.metric, a[0], a[1], b[0], b[1]);
            if (d < best_distance) {
                best_distance = d;
                best = city;
            }
        }
        current = best;
        tour.push_back(current);
        visited[current] = true;
    }
    return tour;
}

std::vector<int> nearest_neighbor_customer_order(const VrpInstance& instance) {
    instance.validate();
    const int customers = instance.customer_count();
    std::vector<int> order;
    order.reserve(customers);
    std::vector<bool> visited(customers, false);
    int last_node = instance.depot;
    for (int step = 0; step < customers; ++step) {
        int best = -1;
        double best_distance = std::numeric_limits<double>::infinity();
        for (int customer = 0; customer < customers; ++customer) {
            if (visited[customer]) {
                continue;
            }
            const int node = instance.customer_node(customer);
            const auto& a = instance.coordinates[last_node];
            const auto& b = instance.coordinates[node];
            const double d = metric_distance(instance.metric, a[0], a[1], b[0], b[1]);
            if (d < best_distance) {
                best_distance = d;
                best = customer;
            }
        }
        order.push_back(best);
        visited[best] = true;
        last_node = instance.customer_node(best);
    }
    return order;
}

std::vector<int> full_two_opt(std::vector<int> permutation,
                              const PermutationObjective& objective) {
    const std::size_t n = permutation.size();
    if (n < 2) {
        return permutation;
    }
    double current = objective.value(permutation);
    while (true) {
        double best_delta = 0.0;
        std::size_t best_i = 0;
        std::size_t best_j = 0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                double delta;
                if (auto d = objective.reversal_delta(permutation, i, j)) {
                    delta = *d;
                } else {
                    const auto first = permutation.begin() + static_cast<std::ptrdiff_t>(i);
                    const auto last = permutation.begin() + static_cast<std::ptrdiff_t>(j) + 1;
                    std::reverse(first, last);
                    delta = objective.value(permutation) - current;
                    std::reverse(first, last);
                }
                if (delta < best_delta) {
                    best_delta = delta;
                    best_i = i;
                    best_j = j;
                }
            }
        }
        if (best_delta >= -kImprovementTol) {
            break;
        }
        std::reverse(permutation.begin() + static_cast<std::ptrdiff_t>(best_i),
                     permutation.begin() + static_cast<std::ptrdiff_t>(best_j) + 1);
        current = objective.value(permutation);
    }
    return permutation;
}

std::vector<int> full_two_opt(const TspInstance& instance, std::vector<int> tour) {
    TourLengthObjective objective(instance);
    return full_two_opt(std::move(tour), objective);
}

SaResult simulated_annealing(const PermutationObjective& objective, std::size_t n,
                             const SaSchedule& schedule, RandomStream& rng) {
    schedule.validate();
    SaResult best;
    std::vector<int> state(n);
    std::iota(state.begin(), state.end(), 0);
    rng.shuffle(state);
    double state_objective = objective.value(state);
    best.permutation = state;
    best.objective = state_objective;
    if (n < 2) {
        return best;
    }

    std::vector<int> proposal;
    for (double temperature = schedule.initial_temperature;
         temperature >= schedule.minimum_temperature;
         temperature *= schedule.cooling_rate) {
        for (int it = 0; it < schedule.iterations_per_temperature; ++it) {
            proposal = state;
            std::size_t a = rng.next_index(n);
            std::size_t b = rng.next_index(n - 1);
            if (b >= a) {
                ++b;
            }
            if (a > b) {
                std::swap(a, b);
            }
            if (rng.bernoulli(0.5)) {
                // Reverse the segment [a, b].
                std::reverse(proposal.begin() + static_cast<std::ptrdiff_t>(a),
                             proposal.begin() + static_cast<std::ptrdiff_t>(b) + 1);
            } else {
                // Relocate the element at a to position b.
                const int lp = proposal[a];
                proposal.erase(proposal.begin() + static_cast<std::ptrdiff_t>(a));
                proposal.insert(proposal.begin() + static_cast<std::ptrdiff_t>(b), lp);
            }
            const double candidate = objective.value(proposal);
            const double delta = candidate - state_objective;
            if (delta <= 0.0 || rng.next_double() < std::exp(-delta / temperature)) {
                state.swap(proposal);
                state_objective = candidate;
                if (state_objective < best.objective) {
                    best.permutation = state;
                    best.objective = state_objective;
                }
            }
        }
    }
    return best;
}

SaResult simulated_annealing(const TspInstance& instance, const SaSchedule& schedule,
                             RandomStream& rng) {
    TourLengthObjective objective(instance);
    return simulated_annealing(objective, instance.city_count(), schedule, rng);
}

SaResult simulated_annealing(const VrpInstance& instance, const SaSchedule& schedule,
                             RandomStream& rng) {
    VrpRouteObjective objective(instance);
    return simulated_annealing(objective, static_cast<std::size_t>(instance.customer_count()),
                               schedule, rng);
}

std::vector<int> greedy_clique(const McpInstance& instance) {
    const int n = instance.vertex_count();
    if (n == 0) {
        return {};
    }
    int seed_vertex = 0;
    for (int v = 1; v < n; ++v) {
        if (instance.degree(v) > instance.degree(seed_vertex)) {
            seed_vertex = v;
        }
    }
    std::vector<int> clique{seed_vertex};
    while (true) {
        int best = -1;
        for (int v = 0; v < n; ++v) {
            bool compatible = std::find(clique.begin(), clique.end(), v) == clique.end();
            for (int m : clique) {
                if (!compatible || !instance.adjacent(v, m)) {
                    compatible = false;
                    break;
                }
            }
            if (compatible && (best == -1 || instance.degree(v) > instance.degree(best))) {
                best = v;
            }
        }
        if (best == -1) {
            break;
        }
        clique.push_back(best);
    }
    return clique;
}

}  // namespace elena
