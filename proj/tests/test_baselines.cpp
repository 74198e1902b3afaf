#include <doctest.h>

#include <algorithm>
#include <vector>

#include "elena/baselines.hpp"
#include "elena/errors.hpp"
#include "oracles.hpp"

using namespace elena;

TEST_SUITE("baselines") {

TEST_CASE("nearest neighbor walks collinear cities in order") {
    TspInstance instance;
    instance.coordinates = {{0, 0}, {1, 0}, {2, 0}};
    const auto tour = nearest_neighbor_tour(instance, 0);
    CHECK(tour == std::vector<int>{0, 1, 2});
    CHECK(tour_length(instance, tour) == doctest::Approx(4.0));
}

TEST_CASE("nearest neighbor trivia") {
    TspInstance one;
    one.coordinates = {{0.3, 0.4}};
    CHECK(nearest_neighbor_tour(one, 0) == std::vector<int>{0});
    CHECK(tour_length(one, std::vector<int>{0}) == doctest::Approx(0.0));
}

TEST_CASE("nearest neighbor visits every city once and never beats the optimum") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const TspInstance instance = random_tsp(7, seed);
        const auto tour = nearest_neighbor_tour(instance, 0);
        std::vector<int> sorted = tour;
        std::sort(sorted.begin(), sorted.end());
        CHECK(sorted == std::vector<int>{0, 1, 2, 3, 4, 5, 6});
        CHECK(tour_length(instance, tour) >=
              oracles::brute_force_tsp(instance) - 1e-9);
    }
}

TEST_CASE("full two-opt refines the crossing square to the optimum") {
    TspInstance instance;
    instance.coordinates = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    const auto refined = full_two_opt(instance, {0, 2, 1, 3});
    CHECK(tour_length(instance, refined) == doctest::Approx(4.0));
}

TEST_CASE("full two-opt never worsens and fixes locally optimal tours") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const TspInstance instance = random_tsp(12, seed);
        const auto start = nearest_neighbor_tour(instance, 0);
        const double before = tour_length(instance, start);
        const auto refined = full_two_opt(instance, start);
        CHECK(tour_length(instance, refined) <= before + 1e-12);
        const auto again = full_two_opt(instance, refined);
        CHECK(again == refined);
    }
}

TEST_CASE("simulated annealing finds the optimum of a small instance") {
    const TspInstance instance = random_tsp(7, 11);
    SaSchedule schedule;  // defaults: T0 1.0, cooling 0.995, 100/level, Tmin 1e-4
    RandomStream rng = split_stream(5, {});
    const SaResult result = simulated_annealing(instance, schedule, rng);
    CHECK(result.objective == doctest::Approx(oracles::brute_force_tsp(instance)));
    CHECK(tour_length(instance, result.permutation) == doctest::Approx(result.objective));
}

TEST_CASE("simulated annealing is deterministic per stream") {
    const TspInstance instance = random_tsp(10, 4);
    SaSchedule schedule;
    schedule.iterations_per_temperature = 10;
    RandomStream a = split_stream(9, {});
    RandomStream b = split_stream(9, {});
    const SaResult ra = simulated_annealing(instance, schedule, a);
    const SaResult rb = simulated_annealing(instance, schedule, b);
    CHECK(ra.permutation == rb.permutation);
    CHECK(ra.objective == doctest::Approx(rb.objective));
}

TEST_CASE("simulated annealing accepts the VRP objective") {
    const VrpInstance instance = random_vrp(VrpGeneratorSpec{8, 3, 20, 1, 8}, 2);
    SaSchedule schedule;
    schedule.iterations_per_temperature = 20;
    RandomStream rng = split_stream(6, {});
    const SaResult result = simulated_annealing(instance, schedule, rng);
    CHECK(result.objective == doctest::Approx(vrp_objective(instance, result.permutation)));
    CHECK(result.objective < kVrpInfeasibleSentinel);
}

TEST_CASE("schedule validation") {
    SaSchedule bad;
    bad.cooling_rate = 1.0;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    bad = SaSchedule{};
    bad.minimum_temperature = 2.0;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
}

TEST_CASE("greedy clique on a triangle takes all three vertices") {
    McpInstance triangle(3);
    triangle.add_edge(0, 1);
    triangle.add_edge(0, 2);
    triangle.add_edge(1, 2);
    CHECK(greedy_clique(triangle).size() == 3);
}

TEST_CASE("greedy clique on a star stops at two vertices") {
    McpInstance star(6);  // center 0 with 5 leaves
    for (int leaf = 1; leaf < 6; ++leaf) {
        star.add_edge(0, leaf);
    }
    const auto clique = greedy_clique(star);
    CHECK(clique.size() == 2);
    CHECK(is_clique(star, clique));
}

TEST_CASE("greedy clique output is always a clique") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        const McpInstance g = random_mcp(30, 0.4, seed);
        const auto clique = greedy_clique(g);
        CHECK(is_clique(g, clique));
        CHECK(!clique.empty());
    }
    CHECK(greedy_clique(McpInstance(0)).empty());
}

}  // TEST_SUITE
