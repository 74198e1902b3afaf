#pragma once

#include <optional>
#include <span>
#include <vector>

#include "elena/config.hpp"
#include "elena/genome.hpp"
#include "elena/rng.hpp"

namespace elena {

// Additive floor applied wherever a tag weights a sampling distribution, so
// no position ever reaches probability zero.
inline constexpr double kWeightFloor = 0.01;

// Absolute tolerance for "strictly improves" comparisons on objectives.
inline constexpr double kImprovementTol = 1e-9;

enum class MutationKind { Swap, Insert, Reverse };

struct SegmentChoice {
    std::size_t start = 0;
    std::size_t length = 0;
};

// With probability base_rate, applies one uniformly chosen mutation kind to
// a permutation genome. Positions are drawn with weight proportional to
// (1 - mutation_resistance) plus the floor, so resistant LPs move less.
// Sequences shorter than 2 come back unchanged.
Genome mutate(const Genome& genome, double base_rate, RandomStream& rng,
              const SolverConfig& config);

struct CrossoverResult {
    Genome child;
    SegmentChoice segment;
};

// Order crossover: a contiguous segment of parent_a is kept at its original
// positions; the rest is filled in parent_b's cyclic order starting after
// the segment, skipping LPs already present. Child tags are the per-LP
// elementwise mean of the parents' tags. The sampled variant draws the
// segment length uniformly in [min_segment_length, n/2] and the start with
// probability proportional to the window's mean crossover affinity plus the
// floor; the explicit variant takes the segment as given.
CrossoverResult order_crossover(const Genome& parent_a, const Genome& parent_b,
                                RandomStream& rng, const SolverConfig& config);
CrossoverResult order_crossover(const Genome& parent_a, const Genome& parent_b,
                                const SegmentChoice& segment);

// Objective over permutations. Implementations may provide an O(1) delta for
// reversing the closed-tour segment [i, j]; returning nullopt makes the
// caller recompute the full value.
class PermutationObjective {
public:
    virtual ~PermutationObjective() = default;

    virtual double value(std::span<const int> sequence) const = 0;

    virtual std::optional<double> reversal_delta(std::span<const int> /*sequence*/,
                                                 std::size_t /*i*/, std::size_t /*j*/) const {
        return std::nullopt;
    }
};

struct TwoOptResult {
    Genome genome;
    double improvement = 0.0;  // objective(input) - objective(output), >= 0
    double objective = 0.0;    // objective of the returned genome
    std::vector<int> touched_lps;  // LPs inside applied reversals, sorted, unique
};

// First-improvement 2-opt: scans (i, j) pairs in ascending order, applies
// the first reversal that improves the objective by more than the tolerance
// and restarts the scan; stops when a full scan finds nothing.
TwoOptResult two_opt_improve(const Genome& genome, const PermutationObjective& objective,
                             const SolverConfig& config);

// Local-search feedback: every touched LP has mutation resistance and
// stability score stepped up when improvement > 0 and stepped down
// otherwise. Crossover affinity is not touched here.
Genome apply_tag_feedback(Genome genome, std::span<const int> touched_lps,
                          double improvement, const SolverConfig& config);

// Crossover feedback: the copied segment's LPs gain affinity when the child
// improved on its parents and lose it otherwise.
Genome update_crossover_affinity(Genome child, std::span<const int> segment_lps,
                                 bool improved_over_parents, const SolverConfig& config);

}  // namespace elena
