#include "elena/operators.hpp"

#include <algorithm>
#include <cassert>

#include "elena/errors.hpp"

namespace elena {

namespace {

std::vector<double> mutation_weights(const Genome& genome) {
    std::vector<double> weights(genome.sequence.size());
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const auto& tags = genome.tags[genome.sequence[i]];
        weights[i] = (1.0 - tags.mutation_resistance) + kWeightFloor;
    }
    return weights;
}

// Two distinct positions, both resistance-weighted.
std::pair<std::size_t, std::size_t> two_positions(std::vector<double> weights, RandomStream& rng) {
    const std::size_t first = rng.weighted_index(weights);
    weights[first] = 0.0;
    const std::size_t second = rng.weighted_index(weights);
    return {first, second};
}

}  // namespace

Genome mutate(const Genome& genome, double base_rate, RandomStream& rng,
              const SolverConfig& config) {
    (void)config;
    const std::size_t n = genome.sequence.size();
    if (n < 2) {
        return genome;
    }
    if (!rng.bernoulli(base_rate)) {
        return genome;
    }

    const auto kind = static_cast<MutationKind>(rng.next_index(3));
    const std::vector<double> weights = mutation_weights(genome);
    Genome out = genome;
    auto& seq = out.sequence;

    switch (kind) {
        case MutationKind::Swap: {
            auto [a, b] = two_positions(weights, rng);
            std::swap(seq[a], seq[b]);
            break;
        }
        case MutationKind::Insert: {
            // Remove at src, reinsert so the LP lands at position dst.
            auto [src, dst] = two_positions(weights, rng);
            const int lp = seq[src];
            seq.erase(seq.begin() + static_cast<std::ptrdiff_t>(src));
            seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(dst), lp);
            break;
        }
        case MutationKind::Reverse: {
            auto [a, b] = two_positions(weights, rng);
            if (a > b) {
                std::swap(a, b);
            }
            std::reverse(seq.begin() + static_cast<std::ptrdiff_t>(a),
                         seq.begin() + static_cast<std::ptrdiff_t>(b) + 1);
            break;
        }
    }
    return out;
}

CrossoverResult order_crossover(const Genome& parent_a, const Genome& parent_b,
                                RandomStream& rng, const SolverConfig& config) {
    if (parent_a.universe_size() != parent_b.universe_size() ||
        parent_a.sequence.size() != parent_b.sequence.size()) {
        throw ValidationError("order_crossover: parents are defined over different LP universes");
    }
    const std::size_t n = parent_a.sequence.size();

    const std::size_t lo =
        std::min<std::size_t>(std::max(config.min_segment_length, 1), n);
    const std::size_t hi = std::max(lo, n / 2);
    const std::size_t length = lo + rng.next_index(hi - lo + 1);

    // Window mean of crossover affinity plus floor, one weight per start.
    std::vector<double> start_weights(n - length + 1);
    double window = 0.0;
    for (std::size_t i = 0; i < length; ++i) {
        window += parent_a.tags[parent_a.sequence[i]].crossover_affinity;
    }
    start_weights[0] = window / static_cast<double>(length) + kWeightFloor;
    for (std::size_t s = 1; s + length <= n; ++s) {
        window -= parent_a.tags[parent_a.sequence[s - 1]].crossover_affinity;
        window += parent_a.tags[parent_a.sequence[s + length - 1]].crossover_affinity;
        start_weights[s] = window / static_cast<double>(length) + kWeightFloor;
    }
    const std::size_t start = rng.weighted_index(start_weights);

    return order_crossover(parent_a, parent_b, SegmentChoice{start, length});
}

CrossoverResult order_crossover(const Genome& parent_a, const Genome& parent_b,
                                const SegmentChoice& segment) {
    if (parent_a.universe_size() != parent_b.universe_size() ||
        parent_a.sequence.size() != parent_b.sequence.size()) {
        throw ValidationError("order_crossover: parents are defined over different LP universes");
    }
    const std::size_t n = parent_a.sequence.size();
    assert(segment.length >= 1 && segment.start + segment.length <= n);

    CrossoverResult result;
    result.segment = segment;
    Genome& child = result.child;
    child.kind = RepresentationKind::Permutation;
    child.tags.resize(parent_a.universe_size());
    for (std::size_t lp = 0; lp < child.tags.size(); ++lp) {
        const auto& ta = parent_a.tags[lp];
        const auto& tb = parent_b.tags[lp];
        child.tags[lp] = EpigeneticTags{(ta.mutation_resistance + tb.mutation_resistance) / 2.0,
                                        (ta.crossover_affinity + tb.crossover_affinity) / 2.0,
                                        (ta.stability_score + tb.stability_score) / 2.0};
    }

    child.sequence.assign(n, -1);
    std::vector<bool> present(parent_a.universe_size(), false);
    for (std::size_t pos = segment.start; pos < segment.start + segment.length; ++pos) {
        child.sequence[pos] = parent_a.sequence[pos];
        present[child.sequence[pos]] = true;
    }

    // Remaining positions in cyclic order after the segment, filled from
    // parent_b scanned cyclically from the same point.
    std::size_t target = (segment.start + segment.length) % n;
    std::size_t source = (segment.start + segment.length) % n;
    for (std::size_t filled = segment.length; filled < n; ++filled) {
        while (present[parent_b.sequence[source]]) {
            source = (source + 1) % n;
        }
        child.sequence[target] = parent_b.sequence[source];
        present[child.sequence[target]] = true;
        target = (target + 1) % n;
        source = (source + 1) % n;
    }
    return result;
}

TwoOptResult two_opt_improve(const Genome& genome, const PermutationObjective& objective,
                             const SolverConfig& config) {
    (void)config;
    TwoOptResult result;
    result.genome = genome;
    auto& seq = result.genome.sequence;
    const std::size_t n = seq.size();

    const double initial = objective.value(seq);
    double current = initial;
    std::vector<bool> touched(genome.universe_size(), false);

    bool improved = n >= 2;
    while (improved) {
        improved = false;
        for (std::size_t i = 0; i + 1 < n && !improved; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const auto first = seq.begin() + static_cast<std::ptrdiff_t>(i);
                const auto last = seq.begin() + static_cast<std::ptrdiff_t>(j) + 1;
                double candidate;
                if (auto delta = objective.reversal_delta(seq, i, j)) {
                    candidate = current + *delta;
                } else {
                    std::reverse(first, last);
                    candidate = objective.value(seq);
                    std::reverse(first, last);
                }
                if (candidate < current - kImprovementTol) {
                    std::reverse(first, last);
                    current = candidate;
                    for (std::size_t k = i; k <= j; ++k) {
                        touched[seq[k]] = true;
                    }
                    improved = true;
                    break;
                }
            }
        }
    }

    result.objective = objective.value(seq);
    result.improvement = initial - result.objective;
    for (std::size_t lp = 0; lp < touched.size(); ++lp) {
        if (touched[lp]) {
            result.touched_lps.push_back(static_cast<int>(lp));
        }
    }
    return result;
}

Genome apply_tag_feedback(Genome genome, std::span<const int> touched_lps, double improvement,
                          const SolverConfig& config) {
    const TagDirection direction =
        improvement > 0.0 ? TagDirection::Increase : TagDirection::Decrease;
    for (int lp : touched_lps) {
        assert(lp >= 0 && static_cast<std::size_t>(lp) < genome.universe_size());
        auto& tags = genome.tags[lp];
        tags.mutation_resistance = update_tag(tags.mutation_resistance, direction, config.delta_mr);
        tags.stability_score = update_tag(tags.stability_score, direction, config.delta_ss);
    }
    return genome;
}

Genome update_crossover_affinity(Genome child, std::span<const int> segment_lps,
                                 bool improved_over_parents, const SolverConfig& config) {
    const TagDirection direction =
        improved_over_parents ? TagDirection::Increase : TagDirection::Decrease;
    for (int lp : segment_lps) {
        assert(lp >= 0 && static_cast<std::size_t>(lp) < child.universe_size());
        auto& tags = child.tags[lp];
        tags.crossover_affinity = update_tag(tags.crossover_affinity, direction, config.delta_ca);
    }
    return child;
}

}  // namespace elena
