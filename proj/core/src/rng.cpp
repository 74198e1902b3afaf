#include "elena/rng.hpp"

#include <cassert>
#include <limits>

namespace elena {

RandomStream::RandomStream(std::uint64_t master_seed, std::span<const std::uint32_t> labels) {
    std::vector<std::uint32_t> material;
    material.reserve(labels.size() + 2);
    material.push_back(static_cast<std::uint32_t>(master_seed));
    material.push_back(static_cast<std::uint32_t>(master_seed >> 32));
    material.insert(material.end(), labels.begin(), labels.end());
    std::seed_seq seq(material.begin(), material.end());
    engine_.seed(seq);
}

std::size_t RandomStream::next_index(std::size_t n) {
    assert(n > 0);
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    // 2^64 mod n, computed in modular arithmetic.
    const std::uint64_t min = (0 - bound) % bound;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x < min);
    return static_cast<std::size_t>(x % bound);
}

std::size_t RandomStream::weighted_index(std::span<const double> weights) {
    assert(!weights.empty());
    double total = 0.0;
    for (double w : weights) {
        assert(w >= 0.0);
        total += w;
    }
    assert(total > 0.0);
    double u = next_double() * total;
    for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
        u -= weights[i];
        if (u < 0.0) {
            return i;
        }
    }
    return weights.size() - 1;
}

RandomStream split_stream(std::uint64_t master_seed, std::span<const std::uint32_t> labels) {
    return RandomStream(master_seed, labels);
}

RandomStream split_stream(std::uint64_t master_seed, std::initializer_list<std::uint32_t> labels) {
    return RandomStream(master_seed, labels);
}

}  // namespace elena
