#pragma once

#include <cstddef>
#include <vector>

#include "elena/rng.hpp"
#include "elena/tags.hpp"

namespace elena {

enum class RepresentationKind { Permutation, VertexSet };

// A candidate solution: an ordered list of learning-parameter (LP)
// identifiers plus one tag triple per LP of the universe. Tags are indexed
// by LP identifier, not by sequence position, so an LP carries its history
// wherever operators move it. For Permutation genomes the sequence is a
// permutation of [0, n); for VertexSet genomes it is a duplicate-free
// subset (the current clique), while `tags` still covers all n LPs.
struct Genome {
    std::vector<int> sequence;
    std::vector<EpigeneticTags> tags;
    RepresentationKind kind = RepresentationKind::Permutation;

    std::size_t universe_size() const { return tags.size(); }

    bool operator==(const Genome&) const = default;
};

// Fresh genome over a universe of n LPs: a uniformly random permutation of
// [0, n) for Permutation genomes, a random singleton for VertexSet genomes.
// Every tag starts at `initial`. Throws ValidationError when n == 0.
Genome new_genome(std::size_t n, RepresentationKind kind, const EpigeneticTags& initial,
                  RandomStream& rng);

// True when `sequence` holds every identifier in [0, n) exactly once.
bool is_valid_permutation(const Genome& genome);

// True when `sequence` has no duplicates and every identifier is in [0, n).
bool is_duplicate_free(const Genome& genome);

// Arithmetic mean of stability scores over the LPs present in `sequence`;
// defined as 0 for an empty sequence.
double mean_stability(const Genome& genome);

}  // namespace elena
