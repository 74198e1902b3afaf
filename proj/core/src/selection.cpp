#include "elena/selection.hpp"

#include <cmath>

#include "elena/errors.hpp"

namespace elena {

SelectionKey selection_key(const Genome& genome, double objective) {
    if (!std::isfinite(objective)) {
        throw ValidationError("selection_key: objective must be finite");
    }
    return SelectionKey{objective, mean_stability(genome)};
}

bool selection_precedes(const SelectionKey& key_a, const Genome& genome_a,
                        const SelectionKey& key_b, const Genome& genome_b) {
    if (key_a.objective != key_b.objective) {
        return key_a.objective < key_b.objective;
    }
    if (key_a.mean_stability != key_b.mean_stability) {
        return key_a.mean_stability > key_b.mean_stability;
    }
    return genome_a.sequence < genome_b.sequence;
}

}  // namespace elena
