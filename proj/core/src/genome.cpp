#include "elena/genome.hpp"

#include <numeric>

#include "elena/errors.hpp"

namespace elena {

Genome new_genome(std::size_t n, RepresentationKind kind, const EpigeneticTags& initial,
                  RandomStream& rng) {
    if (n == 0) {
        throw ValidationError("new_genome: LP universe must not be empty");
    }
    Genome genome;
    genome.kind = kind;
    genome.tags.assign(n, initial);
    if (kind == RepresentationKind::Permutation) {
        genome.sequence.resize(n);
        std::iota(genome.sequence.begin(), genome.sequence.end(), 0);
        rng.shuffle(genome.sequence);
    } else {
        genome.sequence.push_back(static_cast<int>(rng.next_index(n)));
    }
    return genome;
}

bool is_valid_permutation(const Genome& genome) {
    const std::size_t n = genome.universe_size();
    if (genome.sequence.size() != n) {
        return false;
    }
    std::vector<bool> seen(n, false);
    for (int lp : genome.sequence) {
        if (lp < 0 || static_cast<std::size_t>(lp) >= n || seen[lp]) {
            return false;
        }
        seen[lp] = true;
    }
    return true;
}

bool is_duplicate_free(const Genome& genome) {
    const std::size_t n = genome.universe_size();
    std::vector<bool> seen(n, false);
    for (int lp : genome.sequence) {
        if (lp < 0 || static_cast<std::size_t>(lp) >= n || seen[lp]) {
            return false;
        }
        seen[lp] = true;
    }
    return true;
}

double mean_stability(const Genome& genome) {
    if (genome.sequence.empty()) {
        return 0.0;
    }
    double sum = 0.0;
    for (int lp : genome.sequence) {
        sum += genome.tags[lp].stability_score;
    }
    return sum / static_cast<double>(genome.sequence.size());
}

}  // namespace elena
