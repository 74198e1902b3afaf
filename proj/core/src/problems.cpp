#include "elena/problems.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "elena/errors.hpp"

namespace elena {

double metric_distance(Metric metric, double ax, double ay, double bx, double by) {
    const double dx = ax - bx;
    const double dy = ay - by;
    const double raw = std::sqrt(dx * dx + dy * dy);
    if (metric == Metric::RoundedEuclidean) {
        return std::floor(raw + 0.5);  // TSPLIB nint
    }
    return raw;
}

void TspInstance::validate() const {
    if (coordinates.empty()) {
        throw ValidationError("TspInstance: at least one city required");
    }
    for (const auto& c : coordinates) {
        if (!std::isfinite(c[0]) || !std::isfinite(c[1])) {
            throw ValidationError("TspInstance: coordinates must be finite");
        }
    }
}

int VrpInstance::total_demand() const {
    int total = 0;
    for (int d : demands) {
        total += d;
    }
    return total;
}

bool VrpInstance::fleet_feasible() const {
    return static_cast<long long>(total_demand()) <=
           static_cast<long long>(vehicle_count) * capacity;
}

void VrpInstance::validate() const {
    if (coordinates.size() < 2) {
        throw ValidationError("VrpInstance: need a depot and at least one customer");
    }
    if (demands.size() != coordinates.size()) {
        throw ValidationError("VrpInstance: demand count must equal node count");
    }
    if (depot < 0 || static_cast<std::size_t>(depot) >= coordinates.size()) {
        throw ValidationError("VrpInstance: depot index out of range");
    }
    if (capacity < 1) {
        throw ValidationError("VrpInstance: capacity must be positive");
    }
    if (vehicle_count < 1) {
        throw ValidationError("VrpInstance: vehicle count must be positive");
    }
    if (demands[depot] != 0) {
        throw ValidationError("VrpInstance: depot demand must be zero");
    }
    for (std::size_t i = 0; i < demands.size(); ++i) {
        if (demands[i] < 0) {
            throw ValidationError("VrpInstance: demands must be non-negative");
        }
        if (demands[i] > capacity) {
            throw ValidationError("VrpInstance: every demand must fit the vehicle capacity");
        }
    }
    for (const auto& c : coordinates) {
        if (!std::isfinite(c[0]) || !std::isfinite(c[1])) {
            throw ValidationError("VrpInstance: coordinates must be finite");
        }
    }
}

McpInstance::McpInstance(int vertex_count) : vertices_(vertex_count) {
    if (vertex_count < 0) {
        throw ValidationError("McpInstance: vertex count must be non-negative");
    }
    adjacency_.assign(static_cast<std::size_t>(vertex_count) * vertex_count, 0);
    degrees_.assign(vertex_count, 0);
}

void McpInstance::add_edge(int u, int v) {
    if (u < 0 || v < 0 || u >= vertices_ || v >= vertices_) {
        throw ValidationError("McpInstance: edge endpoint out of range");
    }
    if (u == v) {
        throw ValidationError("McpInstance: self-loops are not allowed");
    }
    if (adjacency_[index(u, v)]) {
        return;  // idempotent insert
    }
    adjacency_[index(u, v)] = 1;
    adjacency_[index(v, u)] = 1;
    ++degrees_[u];
    ++degrees_[v];
}

std::size_t McpInstance::edge_count() const {
    std::size_t count = 0;
    for (int u = 0; u < vertices_; ++u) {
        for (int v = u + 1; v < vertices_; ++v) {
            if (adjacent(u, v)) {
                ++count;
            }
        }
    }
    return count;
}

double tour_length(const TspInstance& instance, std::span<const int> permutation) {
    const std::size_t n = permutation.size();
    if (n < 2) {
        return 0.0;
    }
    double length = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = instance.coordinates[permutation[i]];
        const auto& b = instance.coordinates[permutation[(i + 1) % n]];
        length += metric_distance(instance.metric, a[0], a[1], b[0], b[1]);
    }
    return length;
}

std::optional<RouteSet> decode_routes(const VrpInstance& instance,
                                      std::span<const int> permutation) {
    RouteSet result;
    if (permutation.empty()) {
        return result;
    }
    int used = 1;
    int load = 0;
    std::vector<int> route;
    for (int customer : permutation) {
        const int demand = instance.demands[instance.customer_node(customer)];
        if (load + demand > instance.capacity) {
            result.routes.push_back(std::move(route));
            result.loads.push_back(load);
            ++used;
            if (used > instance.vehicle_count) {
                return std::nullopt;
            }
            route = {};
            load = 0;
        }
        route.push_back(customer);
        load += demand;
    }
    result.routes.push_back(std::move(route));
    result.loads.push_back(load);
    return result;
}

double vrp_cost(const VrpInstance& instance, const RouteSet& routes) {
    auto node_distance = [&](int a, int b) {
        const auto& ca = instance.coordinates[a];
        const auto& cb = instance.coordinates[b];
        return metric_distance(instance.metric, ca[0], ca[1], cb[0], cb[1]);
    };
    double cost = 0.0;
    for (const auto& route : routes.routes) {
        if (route.empty()) {
            continue;
        }
        int last = instance.depot;
        for (int customer : route) {
            const int node = instance.customer_node(customer);
            cost += node_distance(last, node);
            last = node;
        }
        cost += node_distance(last, instance.depot);
    }
    return cost;
}

namespace {

// Greedy split walk shared by the cost paths: accumulates route cost through
// `distance(nodeA, nodeB)` and returns the sentinel when vehicles run out.
template <typename Distance>
double routed_cost(const VrpInstance& instance, std::span<const int> permutation,
                   Distance distance) {
    if (permutation.empty()) {
        return 0.0;
    }
    assert(instance.vehicle_count >= 1);
    double cost = 0.0;
    int used = 1;
    int load = 0;
    int last = instance.depot;
    std::size_t assigned = 0;
    for (int customer : permutation) {
        const int node = instance.customer_node(customer);
        const int demand = instance.demands[node];
        if (load + demand > instance.capacity) {
            cost += distance(last, instance.depot);
            ++used;
            if (used > instance.vehicle_count) {
                return kVrpInfeasibleSentinel +
                       static_cast<double>(permutation.size() - assigned);
            }
            load = 0;
            last = instance.depot;
        }
        cost += distance(last, node);
        load += demand;
        last = node;
        ++assigned;
    }
    cost += distance(last, instance.depot);
    return cost;
}

}  // namespace

double vrp_objective(const VrpInstance& instance, std::span<const int> permutation) {
    return routed_cost(instance, permutation, [&](int a, int b) {
        const auto& ca = instance.coordinates[a];
        const auto& cb = instance.coordinates[b];
        return metric_distance(instance.metric, ca[0], ca[1], cb[0], cb[1]);
    });
}

bool is_clique(const McpInstance& instance, std::span<const int> vertices) {
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        for (std::size_t j = i + 1; j < vertices.size(); ++j) {
            if (!instance.adjacent(vertices[i], vertices[j])) {
                return false;
            }
        }
    }
    return true;
}

Genome clique_improve(const McpInstance& instance, Genome genome, const SolverConfig& config) {
    const std::size_t initial_size = genome.sequence.size();

    // Phase 1: ascending-identifier scan; drop the first vertex with a
    // missing edge and restart until the set is a clique.
    std::vector<int> members = genome.sequence;
    std::sort(members.begin(), members.end());
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < members.size() && !changed; ++i) {
            for (std::size_t k = 0; k < members.size(); ++k) {
                if (k != i && !instance.adjacent(members[i], members[k])) {
                    members.erase(members.begin() + static_cast<std::ptrdiff_t>(i));
                    changed = true;
                    break;
                }
            }
        }
    }

    // Phase 2: adaptive memory for the surviving vertices.
    const bool success = members.size() >= initial_size;
    const TagDirection direction = success ? TagDirection::Increase : TagDirection::Decrease;
    for (int v : members) {
        auto& tags = genome.tags[v];
        tags.stability_score = update_tag(tags.stability_score, direction, config.delta_ss);
        tags.mutation_resistance =
            update_tag(tags.mutation_resistance, direction, config.delta_mr);
    }

    // Phase 3: expand with outside vertices connected to every member,
    // highest degree first.
    std::vector<bool> in_clique(instance.vertex_count(), false);
    for (int v : members) {
        in_clique[v] = true;
    }
    auto connected_to_all = [&](int v) {
        for (int m : members) {
            if (!instance.adjacent(v, m)) {
                return false;
            }
        }
        return true;
    };
    std::vector<int> candidates;
    for (int v = 0; v < instance.vertex_count(); ++v) {
        if (!in_clique[v] && connected_to_all(v)) {
            candidates.push_back(v);
        }
    }
    std::sort(candidates.begin(), candidates.end(), [&](int a, int b) {
        if (instance.degree(a) != instance.degree(b)) {
            return instance.degree(a) > instance.degree(b);
        }
        return a < b;
    });
    for (int v : candidates) {
        if (connected_to_all(v)) {
            members.push_back(v);
        }
    }

    genome.sequence = std::move(members);
    return genome;
}

namespace {

std::vector<bool> membership_mask(const McpInstance& instance, const Genome& genome) {
    std::vector<bool> mask(instance.vertex_count(), false);
    for (int v : genome.sequence) {
        mask[v] = true;
    }
    return mask;
}

}  // namespace

Genome mcp_mutate(const McpInstance& instance, Genome genome, RandomStream& rng,
                  const SolverConfig& config) {
    const int n = instance.vertex_count();
    assert(n > 0);
    if (genome.sequence.empty()) {
        genome.sequence.push_back(static_cast<int>(rng.next_index(n)));
        return genome;
    }

    const auto operator_choice = rng.next_index(4);
    auto& seq = genome.sequence;

    switch (operator_choice) {
        case 0: {  // Swap: replace one member with a compatible outside vertex.
            const std::size_t victim_pos = rng.next_index(seq.size());
            const int victim = seq[victim_pos];
            const auto mask = membership_mask(instance, genome);
            std::vector<int> candidates;
            for (int v = 0; v < n; ++v) {
                if (mask[v]) {
                    continue;
                }
                bool compatible = true;
                for (int m : seq) {
                    if (m != victim && !instance.adjacent(v, m)) {
                        compatible = false;
                        break;
                    }
                }
                if (compatible) {
                    candidates.push_back(v);
                }
            }
            if (!candidates.empty()) {
                seq[victim_pos] = candidates[rng.next_index(candidates.size())];
            }
            break;
        }
        case 1: {  // Insert: add a fully connected outside vertex.
            const auto mask = membership_mask(instance, genome);
            std::vector<int> candidates;
            for (int v = 0; v < n; ++v) {
                if (mask[v]) {
                    continue;
                }
                bool compatible = true;
                for (int m : seq) {
                    if (!instance.adjacent(v, m)) {
                        compatible = false;
                        break;
                    }
                }
                if (compatible) {
                    candidates.push_back(v);
                }
            }
            if (!candidates.empty()) {
                seq.push_back(candidates[rng.next_index(candidates.size())]);
            }
            break;
        }
        case 2: {  // Remove: resistance-weighted, enumerated low degree first.
            std::vector<std::size_t> order(seq.size());
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                if (instance.degree(seq[a]) != instance.degree(seq[b])) {
                    return instance.degree(seq[a]) < instance.degree(seq[b]);
                }
                return seq[a] < seq[b];
            });
            std::vector<double> weights(order.size());
            for (std::size_t k = 0; k < order.size(); ++k) {
                const auto& tags = genome.tags[seq[order[k]]];
                weights[k] = (1.0 - tags.mutation_resistance) + kWeightFloor;
            }
            const std::size_t pick = order[rng.weighted_index(weights)];
            seq.erase(seq.begin() + static_cast<std::ptrdiff_t>(pick));
            break;
        }
        default:  // Targeted neighborhood exploration.
            return clique_improve(instance, std::move(genome), config);
    }
    return genome;
}

double mcp_objective(const Genome& genome) {
    return -static_cast<double>(genome.sequence.size());
}

namespace {

constexpr std::uint32_t kTspGenLabel = 10;
constexpr std::uint32_t kVrpGenLabel = 11;
constexpr std::uint32_t kMcpGenLabel = 12;

}  // namespace

TspInstance random_tsp(int cities, std::uint64_t seed, Metric metric) {
    if (cities < 1) {
        throw ValidationError("random_tsp: need at least one city");
    }
    RandomStream rng = split_stream(seed, {kTspGenLabel});
    TspInstance instance;
    instance.name = "tsp-n" + std::to_string(cities) + "-s" + std::to_string(seed);
    instance.metric = metric;
    instance.coordinates.reserve(cities);
    for (int i = 0; i < cities; ++i) {
        const double x = rng.next_double();
        const double y = rng.next_double();
        instance.coordinates.push_back({x, y});
    }
    return instance;
}

VrpInstance random_vrp(const VrpGeneratorSpec& spec, std::uint64_t seed) {
    if (spec.customers < 1 || spec.vehicles < 1 || spec.capacity < 1) {
        throw ValidationError("random_vrp: sizes must be positive");
    }
    if (spec.demand_min < 0 || spec.demand_max < spec.demand_min) {
        throw ValidationError("random_vrp: demand range is empty or negative");
    }
    if (spec.demand_max > spec.capacity) {
        throw ValidationError("random_vrp: demands must fit the vehicle capacity");
    }
    RandomStream rng = split_stream(seed, {kVrpGenLabel});
    VrpInstance instance;
    instance.name = "vrp-n" + std::to_string(spec.customers + 1) + "-s" + std::to_string(seed) +
                    "-k" + std::to_string(spec.vehicles);
    instance.capacity = spec.capacity;
    instance.vehicle_count = spec.vehicles;
    instance.depot = 0;
    instance.metric = spec.metric;
    instance.coordinates.reserve(spec.customers + 1);
    instance.demands.reserve(spec.customers + 1);
    for (int i = 0; i <= spec.customers; ++i) {
        const double x = rng.next_double();
        const double y = rng.next_double();
        instance.coordinates.push_back({x, y});
    }
    instance.demands.push_back(0);  // depot
    const std::size_t span = static_cast<std::size_t>(spec.demand_max - spec.demand_min) + 1;
    for (int i = 0; i < spec.customers; ++i) {
        instance.demands.push_back(spec.demand_min + static_cast<int>(rng.next_index(span)));
    }
    return instance;
}

McpInstance random_mcp(int vertices, double edge_probability, std::uint64_t seed) {
    if (vertices < 1) {
        throw ValidationError("random_mcp: need at least one vertex");
    }
    if (edge_probability < 0.0 || edge_probability > 1.0) {
        throw ValidationError("random_mcp: edge probability must be in [0, 1]");
    }
    RandomStream rng = split_stream(seed, {kMcpGenLabel});
    McpInstance instance(vertices);
    for (int u = 0; u < vertices; ++u) {
        for (int v = u + 1; v < vertices; ++v) {
            if (rng.bernoulli(edge_probability)) {
                instance.add_edge(u, v);
            }
        }
    }
    return instance;
}

// -- Engine bindings ---------------------------------------------------------

TourLengthObjective::TourLengthObjective(const TspInstance& instance)
    : count_(instance.city_count()), distances_(count_ * count_, 0.0) {
    for (std::size_t a = 0; a < count_; ++a) {
        for (std::size_t b = 0; b < count_; ++b) {
            const auto& ca = instance.coordinates[a];
            const auto& cb = instance.coordinates[b];
            distances_[matrix_index(static_cast<int>(a), static_cast<int>(b))] =
                metric_distance(instance.metric, ca[0], ca[1], cb[0], cb[1]);
        }
    }
}

double TourLengthObjective::value(std::span<const int> sequence) const {
    const std::size_t n = sequence.size();
    if (n < 2) {
        return 0.0;
    }
    double length = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        length += distance(sequence[i], sequence[(i + 1) % n]);
    }
    return length;
}

std::optional<double> TourLengthObjective::reversal_delta(std::span<const int> sequence,
                                                          std::size_t i, std::size_t j) const {
    const std::size_t n = sequence.size();
    if (i == 0 && j == n - 1) {
        return 0.0;  // reversing the whole closed tour changes nothing
    }
    const int before = sequence[(i + n - 1) % n];
    const int first = sequence[i];
    const int last = sequence[j];
    const int after = sequence[(j + 1) % n];
    return (distance(before, last) + distance(first, after)) -
           (distance(before, first) + distance(last, after));
}

VrpRouteObjective::VrpRouteObjective(const VrpInstance& instance) : instance_(instance) {}

double VrpRouteObjective::value(std::span<const int> sequence) const {
    return vrp_objective(instance_, sequence);
}

Offspring PermutationBinding::make_offspring(const Genome& parent_a, double objective_a,
                                             const Genome& parent_b, double objective_b,
                                             RandomStream& rng,
                                             const SolverConfig& config) const {
    CrossoverResult cross = order_crossover(parent_a, parent_b, rng, config);
    std::vector<int> segment_lps(
        cross.child.sequence.begin() + static_cast<std::ptrdiff_t>(cross.segment.start),
        cross.child.sequence.begin() +
            static_cast<std::ptrdiff_t>(cross.segment.start + cross.segment.length));

    Genome child = mutate(cross.child, config.initial_mutation_rate, rng, config);
    TwoOptResult search = two_opt_improve(child, permutation_objective(), config);

    // Improving reversals credit the LPs they moved; a fruitless search
    // debits the whole sequence.
    const std::vector<int> touched =
        search.improvement > 0.0 ? std::move(search.touched_lps) : search.genome.sequence;
    Genome improved =
        apply_tag_feedback(std::move(search.genome), touched, search.improvement, config);

    const bool better_than_parents =
        search.objective < std::min(objective_a, objective_b) - kImprovementTol;
    improved =
        update_crossover_affinity(std::move(improved), segment_lps, better_than_parents, config);

    return Offspring{std::move(improved), search.objective};
}

void PermutationBinding::validate_member(const Genome& genome) const {
    assert(is_valid_permutation(genome));
    (void)genome;
}

TspBinding::TspBinding(const TspInstance& instance)
    : instance_(instance), objective_(instance) {
    instance.validate();
}

double TspBinding::objective(const Genome& genome) const {
    return objective_.value(genome.sequence);
}

VrpBinding::VrpBinding(const VrpInstance& instance)
    : instance_(instance), objective_(instance) {
    instance.validate();
}

double VrpBinding::objective(const Genome& genome) const {
    return objective_.value(genome.sequence);
}

Offspring McpBinding::make_offspring(const Genome& parent_a, double objective_a,
                                     const Genome& parent_b, double objective_b,
                                     RandomStream& rng, const SolverConfig& config) const {
    const Genome& winner = objective_b < objective_a ? parent_b : parent_a;
    Genome child = mcp_mutate(instance_, winner, rng, config);
    child = clique_improve(instance_, std::move(child), config);
    const double child_objective = mcp_objective(child);
    return Offspring{std::move(child), child_objective};
}

Genome McpBinding::hgt_insert(const Genome& recipient, const StableSegment& segment,
                              RandomStream& rng, const SolverConfig& config) const {
    (void)rng;
    Genome out = recipient;
    std::vector<bool> present(instance_.vertex_count(), false);
    for (int v : out.sequence) {
        present[v] = true;
    }
    for (int v : segment.lps) {
        if (!present[v]) {
            out.sequence.push_back(v);
            present[v] = true;
        }
    }
    return clique_improve(instance_, std::move(out), config);
}

void McpBinding::validate_member(const Genome& genome) const {
    if (!is_duplicate_free(genome) || !is_clique(instance_, genome.sequence)) {
        throw Error("McpBinding: population member is not a valid clique");
    }
}

}  // namespace elena
