// Deterministic random source. All randomness in the project flows through
// this class so that results are reproducible across platforms and standard
// library versions: std::uniform_*_distribution and std::shuffle are
// implementation defined, so sampling and shuffling are written out here.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace heartml::core {

std::uint64_t splitmix64(std::uint64_t& state);

class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t seed() const noexcept { return seed_; }

    std::uint64_t next_u64();

    // Uniform in [0, 1) with 53 random bits.
    double next_double();

    // Uniform in [low, high).
    double uniform(double low, double high);

    // Uniform integer in [0, n), rejection sampled so every value is
    // equally likely. n must be positive.
    std::size_t below(std::size_t n);

    // Standard normal via Box-Muller.
    double normal();

    // Fisher-Yates, descending.
    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = below(i);
            std::swap(items[i - 1], items[j]);
        }
    }

    // Independent stream derived from this generator's seed. Deriving with
    // the same stream id always yields the same generator regardless of how
    // much the parent has been consumed, which keeps fan-out work
    // (fold x grid items, per-tree sampling) order independent.
    Rng derive(std::uint64_t stream) const;

private:
    std::uint64_t seed_;
    std::mt19937_64 gen_;
    bool have_spare_normal_ = false;
    double spare_normal_ = 0.0;
};

} // namespace heartml::core
