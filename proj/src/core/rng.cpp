#include "core/rng.hpp"

#include <cmath>
#include <numbers>

#include "core/errors.hpp"

namespace heartml::core {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed) : seed_(seed) {
    std::uint64_t state = seed;
    gen_.seed(splitmix64(state));
}

std::uint64_t Rng::next_u64() { return gen_(); }

double Rng::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double low, double high) {
    return low + (high - low) * next_double();
}

std::size_t Rng::below(std::size_t n) {
    if (n == 0) {
        throw ValidationError("Rng::below: n must be positive");
    }
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
        x = next_u64();
    } while (x >= limit);
    return static_cast<std::size_t>(x % bound);
}

double Rng::normal() {
    if (have_spare_normal_) {
        have_spare_normal_ = false;
        return spare_normal_;
    }
    double u1 = 0.0;
    do {
        u1 = next_double();
    } while (u1 <= 0.0);
    double u2 = next_double();
    double radius = std::sqrt(-2.0 * std::log(u1));
    double angle = 2.0 * std::numbers::pi * u2;
    spare_normal_ = radius * std::sin(angle);
    have_spare_normal_ = true;
    return radius * std::cos(angle);
}

Rng Rng::derive(std::uint64_t stream) const {
    std::uint64_t state = seed_ ^ (0xA0761D6478BD642FULL * (stream + 1));
    std::uint64_t mixed = splitmix64(state);
    mixed ^= splitmix64(state);
    return Rng(mixed);
}

} // namespace heartml::core
