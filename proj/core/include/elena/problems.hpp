#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "elena/engine.hpp"
#include "elena/genome.hpp"
#include "elena/operators.hpp"

namespace elena {

// RoundedEuclidean is the TSPLIB EUC_2D convention: each pairwise distance
// rounded to the nearest integer. RealEuclidean keeps full precision.
enum class Metric { RealEuclidean, RoundedEuclidean };

double metric_distance(Metric metric, double ax, double ay, double bx, double by);

struct TspInstance {
    std::string name;
    std::vector<std::array<double, 2>> coordinates;
    Metric metric = Metric::RealEuclidean;

    std::size_t city_count() const { return coordinates.size(); }
    void validate() const;  // >= 1 city, finite coordinates
};

struct VrpInstance {
    std::string name;
    std::string comment;
    std::vector<std::array<double, 2>> coordinates;  // all nodes, depot included
    std::vector<int> demands;                        // per node; depot demand 0
    int capacity = 0;
    int vehicle_count = 0;
    int depot = 0;  // node index into coordinates
    Metric metric = Metric::RoundedEuclidean;
    std::optional<double> best_known;  // parsed from the instance comment

    // LP identifiers are customers 0..customer_count()-1; the mapping skips
    // the depot node.
    int customer_count() const { return static_cast<int>(coordinates.size()) - 1; }
    int customer_node(int customer) const { return customer < depot ? customer : customer + 1; }

    int total_demand() const;
    bool fleet_feasible() const;  // total demand <= vehicle_count * capacity
    void validate() const;
};

struct McpInstance {
    McpInstance() = default;
    explicit McpInstance(int vertex_count);

    int vertex_count() const { return vertices_; }
    bool adjacent(int u, int v) const { return adjacency_[index(u, v)] != 0; }
    void add_edge(int u, int v);  // rejects self-loops and out-of-range vertices
    int degree(int v) const { return degrees_[v]; }
    std::size_t edge_count() const;

private:
    std::size_t index(int u, int v) const {
        return static_cast<std::size_t>(u) * static_cast<std::size_t>(vertices_) +
               static_cast<std::size_t>(v);
    }

    int vertices_ = 0;
    std::vector<std::uint8_t> adjacency_;
    std::vector<int> degrees_;
};

struct RouteSet {
    std::vector<std::vector<int>> routes;  // customer LP ids per vehicle
    std::vector<int> loads;
};

// Closed-tour length of a permutation over the instance's cities.
double tour_length(const TspInstance& instance, std::span<const int> permutation);

// Greedy sequential split of a customer permutation into capacity-feasible
// routes. Returns nullopt when the fleet is exhausted before every customer
// is placed.
std::optional<RouteSet> decode_routes(const VrpInstance& instance,
                                      std::span<const int> permutation);

// Sum of depot -> customers -> depot path lengths over all routes.
double vrp_cost(const VrpInstance& instance, const RouteSet& routes);

// Objective used by the engine: route cost when the permutation decodes, a
// sentinel far above any feasible cost otherwise. The sentinel grows with
// the number of unplaced customers so infeasible solutions still order
// deterministically.
inline constexpr double kVrpInfeasibleSentinel = 1e12;
double vrp_objective(const VrpInstance& instance, std::span<const int> permutation);

bool is_clique(const McpInstance& instance, std::span<const int> vertices);

// Three-phase clique repair and growth. Phase 1 drops vertices with missing
// edges (ascending identifier scan, restarting after each removal) until the
// set is a clique. Phase 2 steps stability and mutation resistance up for
// every surviving vertex when the valid set did not shrink, down otherwise.
// Phase 3 adds every outside vertex connected to all current members,
// highest degree first (ties toward the lower identifier).
Genome clique_improve(const McpInstance& instance, Genome genome, const SolverConfig& config);

// One of four clique mutations, chosen uniformly: Swap a member for an
// outside vertex compatible with the rest, Insert a fully connected outside
// vertex, Remove a member (weight (1 - mutation_resistance) + floor,
// enumerated in ascending-degree order), or run clique_improve. The output
// is always a valid clique; an empty genome gets a random vertex inserted.
Genome mcp_mutate(const McpInstance& instance, Genome genome, RandomStream& rng,
                  const SolverConfig& config);

// Clique size negated, so the engine's minimization maximizes the clique.
double mcp_objective(const Genome& genome);

// Seeded generators: unit-square coordinates for TSP/VRP, G(n, p) for MCP.
TspInstance random_tsp(int cities, std::uint64_t seed, Metric metric = Metric::RealEuclidean);

struct VrpGeneratorSpec {
    int customers = 10;
    int vehicles = 2;
    int capacity = 30;
    int demand_min = 1;
    int demand_max = 10;
    Metric metric = Metric::RealEuclidean;
};
VrpInstance random_vrp(const VrpGeneratorSpec& spec, std::uint64_t seed);

McpInstance random_mcp(int vertices, double edge_probability, std::uint64_t seed);

// -- Engine bindings ---------------------------------------------------------

class TourLengthObjective final : public PermutationObjective {
public:
    explicit TourLengthObjective(const TspInstance& instance);

    double value(std::span<const int> sequence) const override;
    std::optional<double> reversal_delta(std::span<const int> sequence, std::size_t i,
                                         std::size_t j) const override;

    double distance(int a, int b) const { return distances_[matrix_index(a, b)]; }

private:
    std::size_t matrix_index(int a, int b) const {
        return static_cast<std::size_t>(a) * count_ + static_cast<std::size_t>(b);
    }

    std::size_t count_;
    std::vector<double> distances_;
};

class VrpRouteObjective final : public PermutationObjective {
public:
    explicit VrpRouteObjective(const VrpInstance& instance);

    double value(std::span<const int> sequence) const override;

private:
    const VrpInstance& instance_;
};

// Shared permutation pipeline: order crossover, adaptive mutation, 2-opt
// local search with tag feedback, then crossover-affinity feedback against
// the parents.
class PermutationBinding : public ProblemBinding {
public:
    RepresentationKind representation() const override {
        return RepresentationKind::Permutation;
    }
    Offspring make_offspring(const Genome& parent_a, double objective_a, const Genome& parent_b,
                             double objective_b, RandomStream& rng,
                             const SolverConfig& config) const override;
    void validate_member(const Genome& genome) const override;

    virtual const PermutationObjective& permutation_objective() const = 0;
};

class TspBinding final : public PermutationBinding {
public:
    explicit TspBinding(const TspInstance& instance);

    std::size_t universe_size() const override { return instance_.city_count(); }
    double objective(const Genome& genome) const override;
    const PermutationObjective& permutation_objective() const override { return objective_; }

private:
    const TspInstance& instance_;
    TourLengthObjective objective_;
};

class VrpBinding final : public PermutationBinding {
public:
    explicit VrpBinding(const VrpInstance& instance);

    std::size_t universe_size() const override {
        return static_cast<std::size_t>(instance_.customer_count());
    }
    double objective(const Genome& genome) const override;
    const PermutationObjective& permutation_objective() const override { return objective_; }

private:
    const VrpInstance& instance_;
    VrpRouteObjective objective_;
};

class McpBinding final : public ProblemBinding {
public:
    explicit McpBinding(const McpInstance& instance) : instance_(instance) {}

    std::size_t universe_size() const override {
        return static_cast<std::size_t>(instance_.vertex_count());
    }
    RepresentationKind representation() const override { return RepresentationKind::VertexSet; }
    double objective(const Genome& genome) const override { return mcp_objective(genome); }

    // Clone the better parent, mutate, then repair and expand. The order
    // crossover is a permutation operator, so vertex-set reproduction is
    // mutation-driven.
    Offspring make_offspring(const Genome& parent_a, double objective_a, const Genome& parent_b,
                             double objective_b, RandomStream& rng,
                             const SolverConfig& config) const override;

    // Union with the transferred vertex subset, then clique_improve to
    // restore validity.
    Genome hgt_insert(const Genome& recipient, const StableSegment& segment, RandomStream& rng,
                      const SolverConfig& config) const override;

    // Second validation tier: every member must be a duplicate-free clique,
    // every generation.
    void validate_member(const Genome& genome) const override;

    const McpInstance& instance() const { return instance_; }

private:
    const McpInstance& instance_;
};

}  // namespace elena
