#pragma once

// Seeding and the handful of variate generators the sampler needs. Everything
// here is written against a bare 64-bit engine so that results are identical
// across standard library implementations.

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

#include "lomax/errors.hpp"

namespace lomax {

using Rng = std::mt19937_64;

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Engine seeded from a user seed. The seed is mixed first so nearby seeds
/// give unrelated streams.
inline Rng make_rng(std::uint64_t seed) { return Rng(splitmix64(seed)); }

/// Seed for chain `index` of a run seeded with `seed`.
inline constexpr std::uint64_t chain_seed(std::uint64_t seed, std::size_t index) noexcept {
    return seed ^ (static_cast<std::uint64_t>(index) + 1);
}

/// Uniform on the open interval (0, 1) with 53 bits of resolution.
template <class Engine>
double uniform_open(Engine& rng) {
    static_assert(Engine::max() - Engine::min() == std::numeric_limits<std::uint64_t>::max(),
                  "uniform_open expects a full-range 64-bit engine");
    const auto bits = static_cast<std::uint64_t>(rng() - Engine::min()) >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

/// Standard normal via the Marsaglia polar method (second variate discarded).
template <class Engine>
double standard_normal(Engine& rng) {
    double u, v, s;
    do {
        u = 2.0 * uniform_open(rng) - 1.0;
        v = 2.0 * uniform_open(rng) - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    return u * std::sqrt(-2.0 * std::log(s) / s);
}

template <class Engine>
double standard_exponential(Engine& rng) {
    return -std::log(uniform_open(rng));
}

/// Gamma(shape, rate) variate.
///
/// Marsaglia-Tsang squeeze/rejection for shape >= 1. For shape < 1 a
/// Gamma(shape + 1) draw is multiplied by U^(1/shape).
template <class Engine>
double gamma_variate(Engine& rng, double shape, double rate = 1.0) {
    if (!(shape > 0.0) || !(rate > 0.0) || !std::isfinite(shape) || !std::isfinite(rate))
        throw DomainError("gamma_variate: shape and rate must be positive and finite");

    const bool boosted = shape < 1.0;
    const double a = boosted ? shape + 1.0 : shape;
    const double d = a - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);

    double v;
    for (;;) {
        double z, t;
        do {
            z = standard_normal(rng);
            t = 1.0 + c * z;
        } while (t <= 0.0);
        v = t * t * t;
        const double u = uniform_open(rng);
        const double z2 = z * z;
        if (u < 1.0 - 0.0331 * z2 * z2)
            break;
        if (std::log(u) < 0.5 * z2 + d * (1.0 - v + std::log(v)))
            break;
    }
    double x = d * v;
    if (boosted)
        x *= std::pow(uniform_open(rng), 1.0 / shape);
    return x / rate;
}

/// Inverse-Gamma(shape, scale): scale / Gamma(shape, 1).
template <class Engine>
double inverse_gamma_variate(Engine& rng, double shape, double scale) {
    if (!(scale > 0.0) || !std::isfinite(scale))
        throw DomainError("inverse_gamma_variate: scale must be positive and finite");
    return scale / gamma_variate(rng, shape, 1.0);
}

}  // namespace lomax
