#pragma once

#include <algorithm>

namespace elena {

// Per-LP adaptive state. Mutation resistance lowers an LP's chance of being
// picked for mutation, crossover affinity raises the chance its neighborhood
// is kept together as the copied crossover segment, and the stability score
// tracks historical contribution to improvements (it gates HGT eligibility).
// All three stay inside [0, 1].
struct EpigeneticTags {
    double mutation_resistance = 0.5;
    double crossover_affinity = 0.7;
    double stability_score = 0.5;

    bool operator==(const EpigeneticTags&) const = default;
};

enum class TagDirection { Increase, Decrease };

// Clamped single-tag step: min(1, x + step) on increase, max(0, x - step)
// on decrease.
inline double update_tag(double value, TagDirection direction, double step) {
    if (direction == TagDirection::Increase) {
        return std::min(1.0, value + step);
    }
    return std::max(0.0, value - step);
}

inline bool tags_in_range(const EpigeneticTags& t) {
    auto ok = [](double v) { return v >= 0.0 && v <= 1.0; };
    return ok(t.mutation_resistance) && ok(t.crossover_affinity) && ok(t.stability_score);
}

}  // namespace elena
