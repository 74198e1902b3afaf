#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <vector>

namespace elena {

// Deterministic random stream derived from a master seed and a label path.
// Distinct label paths yield independent streams; the same path always
// reproduces the same draw sequence. All distributions are hand-rolled on
// top of mt19937_64 so that draws do not depend on the standard library's
// unspecified distribution algorithms.
class RandomStream {
public:
    RandomStream() : RandomStream(0, {}) {}
    RandomStream(std::uint64_t master_seed, std::span<const std::uint32_t> labels);
    RandomStream(std::uint64_t master_seed, std::initializer_list<std::uint32_t> labels)
        : RandomStream(master_seed, std::span<const std::uint32_t>(labels.begin(), labels.size())) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1), 53-bit resolution.
    double next_double() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return next_double() < p; }

    // Uniform in [0, n), rejection-sampled to avoid modulo bias. n must be > 0.
    std::size_t next_index(std::size_t n);

    // Index drawn proportionally to non-negative weights (at least one positive).
    std::size_t weighted_index(std::span<const double> weights);

    template <typename T>
    void shuffle(std::vector<T>& values) {
        for (std::size_t i = values.size(); i > 1; --i) {
            std::swap(values[i - 1], values[next_index(i)]);
        }
    }

private:
    std::mt19937_64 engine_;
};

// Stream factory shared by every module: one master seed, one label path.
RandomStream split_stream(std::uint64_t master_seed, std::span<const std::uint32_t> labels);
RandomStream split_stream(std::uint64_t master_seed, std::initializer_list<std::uint32_t> labels);

}  // namespace elena
