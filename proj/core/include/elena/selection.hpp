#pragma once

#include "elena/genome.hpp"

namespace elena {

// Ranking key: raw objective first (lower is better), mean stability score
// as tie-break (higher is better). Remaining ties fall through to the
// genome's lexicographic sequence order so that sorting is fully
// deterministic. The blended quality/stability intent is realized as an
// ordering rather than a weighted sum, which keeps reported objectives
// undistorted and avoids an arbitrary weighting constant.
struct SelectionKey {
    double objective = 0.0;
    double mean_stability = 0.0;

    bool operator==(const SelectionKey&) const = default;
};

SelectionKey selection_key(const Genome& genome, double objective);

// Strict total order over (key, genome) pairs. Returns true when the first
// candidate ranks strictly better.
bool selection_precedes(const SelectionKey& key_a, const Genome& genome_a,
                        const SelectionKey& key_b, const Genome& genome_b);

}  // namespace elena
