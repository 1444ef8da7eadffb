#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace expsum {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Reduce an angle to the representative in (-pi, pi].
inline double wrap_to_pi(double x) {
    double r = std::fmod(x + pi, two_pi);
    if (r <= 0.0) r += two_pi;
    return r - pi;
}

/// Distance between two angles on the circle, in [0, pi].
inline double circular_distance(double a, double b) {
    double d = std::fmod(std::abs(a - b), two_pi);
    return d > pi ? two_pi - d : d;
}

/// splitmix64 mixing step.
inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derive an independent stream seed for a numbered trial from a base seed.
/// Concurrent trials must use distinct indices; the mix keeps nearby indices
/// statistically unrelated.
inline std::uint64_t mix_seed(std::uint64_t base_seed, std::uint64_t trial_index) {
    return splitmix64(base_seed ^ splitmix64(trial_index));
}

/// Thrown when a recovery or baseline run cannot produce a usable estimate
/// (rank collapse, empty peak set where sources are required, singular basis).
class degenerate_error : public std::runtime_error {
public:
    explicit degenerate_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace expsum
