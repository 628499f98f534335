#pragma once

// Lomax (Pareto type II) distribution with scale beta and shape alpha:
//
//   f(x) = (alpha / beta) (1 + x / beta)^-(alpha + 1),   x >= 0.
//
// It is also the marginal of the gamma-exponential mixture
//   lambda ~ Gamma(alpha, 1),  X | lambda ~ Exponential(rate lambda / beta),
// which is what the data-augmented sampler exploits.

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lomax/errors.hpp"
#include "lomax/random.hpp"

namespace lomax {

/// Scale/shape pair. Validated on construction.
class LomaxParams {
  public:
    LomaxParams(double beta, double alpha) : beta_(beta), alpha_(alpha) {
        if (!std::isfinite(beta) || !(beta > 0.0))
            throw DomainError("LomaxParams: beta must be positive and finite, got " +
                              std::to_string(beta));
        if (!std::isfinite(alpha) || !(alpha > 0.0))
            throw DomainError("LomaxParams: alpha must be positive and finite, got " +
                              std::to_string(alpha));
    }

    double beta() const noexcept { return beta_; }
    double alpha() const noexcept { return alpha_; }

    friend bool operator==(const LomaxParams&, const LomaxParams&) = default;

  private:
    double beta_;
    double alpha_;
};

/// Non-empty sample of non-negative finite observations.
class Dataset {
  public:
    explicit Dataset(std::vector<double> x) : x_(std::move(x)) {
        if (x_.empty())
            throw DomainError("Dataset: at least one observation is required");
        for (std::size_t i = 0; i < x_.size(); ++i) {
            if (!std::isfinite(x_[i]) || x_[i] < 0.0)
                throw DomainError("Dataset: observation " + std::to_string(i) +
                                  " is negative or not finite");
        }
    }

    std::size_t size() const noexcept { return x_.size(); }
    std::span<const double> values() const noexcept { return x_; }
    double operator[](std::size_t i) const { return x_[i]; }

    auto begin() const noexcept { return x_.begin(); }
    auto end() const noexcept { return x_.end(); }

  private:
    std::vector<double> x_;
};

namespace detail {
inline void require_nonnegative(double x, const char* who) {
    if (!(x >= 0.0))
        throw DomainError(std::string(who) + ": x must be >= 0");
}
}  // namespace detail

inline double log_pdf(const LomaxParams& p, double x) {
    detail::require_nonnegative(x, "log_pdf");
    return std::log(p.alpha() / p.beta()) - (p.alpha() + 1.0) * std::log1p(x / p.beta());
}

inline double pdf(const LomaxParams& p, double x) { return std::exp(log_pdf(p, x)); }

inline double log_survival(const LomaxParams& p, double x) {
    detail::require_nonnegative(x, "survival");
    return -p.alpha() * std::log1p(x / p.beta());
}

/// S(x) = (1 + x/beta)^-alpha.
inline double survival(const LomaxParams& p, double x) { return std::exp(log_survival(p, x)); }

/// h(x) = (alpha/beta) / (1 + x/beta); strictly decreasing.
inline double hazard(const LomaxParams& p, double x) {
    detail::require_nonnegative(x, "hazard");
    return (p.alpha() / p.beta()) / (1.0 + x / p.beta());
}

inline double median(const LomaxParams& p) {
    return p.beta() * std::expm1(std::log(2.0) / p.alpha());
}

inline double mean(const LomaxParams& p) {
    if (!(p.alpha() > 1.0))
        throw UndefinedMomentError("mean undefined for alpha <= 1");
    return p.beta() / (p.alpha() - 1.0);
}

inline double variance(const LomaxParams& p) {
    if (!(p.alpha() > 2.0))
        throw UndefinedMomentError("variance undefined for alpha <= 2");
    const double a = p.alpha();
    const double b = p.beta();
    return a * b * b / ((a - 1.0) * (a - 1.0) * (a - 2.0));
}

/// Inverse of the survival function: the x with S(x) = u, for u in (0, 1].
inline double inverse_survival(const LomaxParams& p, double u) {
    if (!(u > 0.0 && u <= 1.0))
        throw DomainError("inverse_survival: u must lie in (0, 1]");
    return p.beta() * std::expm1(-std::log(u) / p.alpha());
}

/// n i.i.d. draws by inverting the survival function.
template <class Engine>
Dataset sample(const LomaxParams& p, Engine& rng, std::size_t n) {
    if (n == 0)
        throw DomainError("sample: n must be >= 1");
    std::vector<double> x(n);
    for (auto& xi : x)
        xi = inverse_survival(p, uniform_open(rng));
    return Dataset(std::move(x));
}

/// One draw of X | lambda ~ Exponential(rate lambda / beta).
template <class Engine>
double sample_given_lambda(double beta, double lambda, Engine& rng) {
    return beta * standard_exponential(rng) / lambda;
}

/// n i.i.d. draws through the gamma-exponential mixture.
template <class Engine>
Dataset sample_hierarchical(const LomaxParams& p, Engine& rng, std::size_t n) {
    if (n == 0)
        throw DomainError("sample_hierarchical: n must be >= 1");
    std::vector<double> x(n);
    for (auto& xi : x) {
        const double lambda = gamma_variate(rng, p.alpha(), 1.0);
        xi = sample_given_lambda(p.beta(), lambda, rng);
    }
    return Dataset(std::move(x));
}

}  // namespace lomax
