#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "lomax/distribution.hpp"
#include "lomax/errors.hpp"

namespace lomax {

/// Objective priors on (beta, alpha).
///
/// JeffreysIndependent and Reference share the density 1/(alpha beta) but are
/// kept apart so reports can name the prior that was asked for.
enum class PriorKind { JeffreysDependent, JeffreysIndependent, Reference };

inline constexpr std::string_view to_string(PriorKind kind) noexcept {
    switch (kind) {
    case PriorKind::JeffreysDependent:
        return "jeffreys";
    case PriorKind::JeffreysIndependent:
        return "jeffreys-indep";
    case PriorKind::Reference:
        return "reference";
    }
    return "unknown";
}

inline std::optional<PriorKind> parse_prior_kind(std::string_view name) noexcept {
    if (name == "jeffreys")
        return PriorKind::JeffreysDependent;
    if (name == "jeffreys-indep")
        return PriorKind::JeffreysIndependent;
    if (name == "reference")
        return PriorKind::Reference;
    return std::nullopt;
}

/// Symmetric 2x2 matrix in (beta, alpha) order.
struct FisherMatrix {
    double i11 = 0.0;
    double i12 = 0.0;
    double i22 = 0.0;
    std::size_t n = 1;

    double i21() const noexcept { return i12; }
    double determinant() const noexcept { return i11 * i22 - i12 * i12; }
};

/// Expected information of n observations.
inline FisherMatrix fisher_information(const LomaxParams& p, std::size_t n) {
    if (n == 0)
        throw DomainError("fisher_information: n must be >= 1");
    const double a = p.alpha();
    const double b = p.beta();
    const double nn = static_cast<double>(n);
    return {nn * a / (b * b * (a + 2.0)), -nn / (b * (a + 1.0)), nn / (a * a), n};
}

/// Closed-form inverse of fisher_information(p, n).
inline FisherMatrix fisher_inverse(const LomaxParams& p, std::size_t n) {
    if (n == 0)
        throw DomainError("fisher_inverse: n must be >= 1");
    const double a = p.alpha();
    const double b = p.beta();
    const double nn = static_cast<double>(n);
    const double a1 = a + 1.0;
    const double a2 = a + 2.0;
    return {b * b * a2 * a1 * a1 / a / nn, b * a * a2 * a1 / nn, a * a * a1 * a1 / nn, n};
}

/// Log prior density, additive constant fixed at zero.
inline double log_prior(PriorKind kind, const LomaxParams& p) {
    const double a = p.alpha();
    const double b = p.beta();
    switch (kind) {
    case PriorKind::JeffreysDependent:
        return -std::log(b) - std::log(a + 1.0) - 0.5 * std::log(a) - 0.5 * std::log(a + 2.0);
    case PriorKind::JeffreysIndependent:
    case PriorKind::Reference:
        return -std::log(a) - std::log(b);
    }
    return 0.0;
}

/// Smallest sample size giving a proper posterior under `kind`.
inline constexpr std::size_t min_sample_size(PriorKind kind) noexcept {
    return kind == PriorKind::JeffreysDependent ? 1 : 2;
}

/// Throws ImproperPosteriorError when n is too small for `kind`.
inline void require_proper(PriorKind kind, std::size_t n) {
    if (n < min_sample_size(kind))
        throw ImproperPosteriorError("improper posterior: prior '" + std::string(to_string(kind)) +
                                     "' needs n >= " + std::to_string(min_sample_size(kind)) +
                                     ", got n = " + std::to_string(n));
}

/// Unnormalized joint log posterior: log likelihood plus log_prior.
inline double log_posterior(PriorKind kind, const LomaxParams& p, const Dataset& d) {
    require_proper(kind, d.size());
    const double a = p.alpha();
    const double b = p.beta();
    const double n = static_cast<double>(d.size());
    double sum_log1p = 0.0;
    for (double x : d)
        sum_log1p += std::log1p(x / b);
    return n * (std::log(a) - std::log(b)) - (a + 1.0) * sum_log1p + log_prior(kind, p);
}

}  // namespace lomax
