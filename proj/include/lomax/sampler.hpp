#pragma once

// Data-augmented Metropolis-Hastings-within-Gibbs sampler.
//
// State is (alpha, beta, lambda_1..lambda_n). One sweep draws
//   lambda_i | alpha, beta  ~ Gamma(alpha + 1, rate 1 + x_i / beta)
//   beta     | lambda       ~ Inverse-Gamma(n, sum lambda_i x_i)
//   alpha    | lambda       by one random-walk MH step
// in that order.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <future>
#include <numbers>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "lomax/distribution.hpp"
#include "lomax/errors.hpp"
#include "lomax/priors.hpp"
#include "lomax/random.hpp"

namespace lomax {

struct AugmentedState {
    double alpha = 1.0;
    double beta = 1.0;
    std::vector<double> lambda;
};

struct McmcConfig {
    std::size_t iterations = 11000;
    std::size_t burn_in = 1000;
    std::size_t thin = 10;
    std::size_t chains = 2;
    double tuning = 1.0;  ///< sd of the normal random-walk proposal for alpha
    std::uint64_t seed = 20150101;
    std::optional<double> init_alpha;
    std::optional<double> init_beta;
    bool store_lambda_traces = false;

    void validate() const {
        if (iterations == 0)
            throw ConfigError("iterations must be >= 1");
        if (burn_in >= iterations)
            throw ConfigError("burn_in must be smaller than iterations");
        if (thin == 0)
            throw ConfigError("thin must be >= 1");
        if (chains == 0)
            throw ConfigError("chains must be >= 1");
        if (!(tuning > 0.0) || !std::isfinite(tuning))
            throw ConfigError("tuning must be positive and finite");
        if (init_alpha && !(*init_alpha > 0.0 && std::isfinite(*init_alpha)))
            throw ConfigError("init_alpha must be positive and finite");
        if (init_beta && !(*init_beta > 0.0 && std::isfinite(*init_beta)))
            throw ConfigError("init_beta must be positive and finite");
    }

    /// Draws kept per chain: floor((iterations - burn_in) / thin).
    std::size_t retained() const noexcept { return (iterations - burn_in) / thin; }
};

struct Draw {
    double alpha;
    double beta;

    friend bool operator==(const Draw&, const Draw&) = default;
};

struct Chain {
    std::vector<Draw> draws;
    std::vector<double> lambda_means;
    /// Row-major retained x n when McmcConfig::store_lambda_traces is set.
    std::vector<double> lambda_traces;
    std::size_t accepted = 0;
    std::size_t proposed = 0;
    std::size_t index = 0;
    std::uint64_t seed = 0;
    McmcConfig config;

    std::vector<double> alphas() const {
        std::vector<double> out;
        out.reserve(draws.size());
        for (const auto& d : draws)
            out.push_back(d.alpha);
        return out;
    }

    std::vector<double> betas() const {
        std::vector<double> out;
        out.reserve(draws.size());
        for (const auto& d : draws)
            out.push_back(d.beta);
        return out;
    }
};

struct ChainSet {
    std::vector<Chain> chains;

    std::size_t total_draws() const noexcept {
        std::size_t total = 0;
        for (const auto& c : chains)
            total += c.draws.size();
        return total;
    }

    /// Draws of all chains concatenated in chain order.
    std::vector<Draw> pooled() const {
        std::vector<Draw> out;
        out.reserve(total_draws());
        for (const auto& c : chains)
            out.insert(out.end(), c.draws.begin(), c.draws.end());
        return out;
    }
};

/// Fills `out` with fresh lambda_i ~ Gamma(alpha + 1, 1 + x_i / beta).
template <class Engine>
void sample_lambda_into(std::span<double> out, double alpha, double beta, const Dataset& d,
                        Engine& rng) {
    const double shape = alpha + 1.0;
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = gamma_variate(rng, shape, 1.0 + d[i] / beta);
}

template <class Engine>
std::vector<double> sample_lambda(const AugmentedState& state, const Dataset& d, Engine& rng) {
    std::vector<double> out(d.size());
    sample_lambda_into(std::span<double>(out), state.alpha, state.beta, d, rng);
    return out;
}

inline double weighted_sum(std::span<const double> lambda, const Dataset& d) {
    double s = 0.0;
    for (std::size_t i = 0; i < lambda.size(); ++i)
        s += lambda[i] * d[i];
    return s;
}

/// beta | lambda ~ IG(n, sum lambda_i x_i).
template <class Engine>
double sample_beta(std::span<const double> lambda, const Dataset& d, Engine& rng) {
    const double scale = weighted_sum(lambda, d);
    if (!(scale > 0.0))
        throw DegenerateDataError("scale conditional is degenerate: all observations are zero");
    return inverse_gamma_variate(rng, static_cast<double>(d.size()), scale);
}

template <class Engine>
double sample_beta(const AugmentedState& state, const Dataset& d, Engine& rng) {
    return sample_beta(std::span<const double>(state.lambda), d, rng);
}

/// Log of the alpha full conditional given n and sum(log lambda_i).
inline double log_alpha_conditional(PriorKind kind, double alpha, std::size_t n,
                                    double sum_log_lambda) {
    double prior = 0.0;
    switch (kind) {
    case PriorKind::JeffreysDependent:
        prior = -std::log(alpha + 1.0) - 0.5 * std::log(alpha) - 0.5 * std::log(alpha + 2.0);
        break;
    case PriorKind::JeffreysIndependent:
    case PriorKind::Reference:
        prior = -std::log(alpha);
        break;
    }
    return prior - static_cast<double>(n) * std::lgamma(alpha) + (alpha - 1.0) * sum_log_lambda;
}

inline double sum_log(std::span<const double> v) {
    double s = 0.0;
    for (double x : v)
        s += std::log(x);
    return s;
}

inline double log_alpha_conditional(PriorKind kind, double alpha, std::span<const double> lambda) {
    return log_alpha_conditional(kind, alpha, lambda.size(), sum_log(lambda));
}

/// log Phi(z) for the standard normal CDF.
inline double log_normal_cdf(double z) {
    if (z >= 0.0)
        return std::log1p(-0.5 * std::erfc(z / std::numbers::sqrt2));
    return std::log(0.5 * std::erfc(-z / std::numbers::sqrt2));
}

/// Log MH ratio for moving alpha from `current` to `proposal` under a normal
/// random walk with sd `tuning`, truncated to (0, inf).
inline double mh_log_ratio(PriorKind kind, double current, double proposal, std::size_t n,
                           double sum_log_lambda, double tuning) {
    if (proposal == current)
        return 0.0;
    const double target = log_alpha_conditional(kind, proposal, n, sum_log_lambda) -
                          log_alpha_conditional(kind, current, n, sum_log_lambda);
    const double truncation = log_normal_cdf(current / tuning) - log_normal_cdf(proposal / tuning);
    return target + truncation;
}

struct MhResult {
    double value;
    bool accepted;
};

template <class Engine>
MhResult mh_step_alpha(double current, PriorKind kind, std::size_t n, double sum_log_lambda,
                       double tuning, Engine& rng) {
    if (!(current > 0.0))
        throw DomainError("mh_step_alpha: current alpha must be positive");
    double proposal;
    do {
        proposal = current + tuning * standard_normal(rng);
    } while (!(proposal > 0.0));
    const double log_ratio = mh_log_ratio(kind, current, proposal, n, sum_log_lambda, tuning);
    if (std::log(uniform_open(rng)) <= log_ratio)
        return {proposal, true};
    return {current, false};
}

template <class Engine>
MhResult mh_step_alpha(double current, PriorKind kind, std::span<const double> lambda,
                       double tuning, Engine& rng) {
    return mh_step_alpha(current, kind, lambda.size(), sum_log(lambda), tuning, rng);
}

/// Runs one chain. Deterministic in (cfg.seed, chain_index).
inline Chain run_chain(const Dataset& d, PriorKind kind, const McmcConfig& cfg,
                       std::size_t chain_index) {
    cfg.validate();
    require_proper(kind, d.size());
    bool any_positive = false;
    for (double x : d)
        any_positive = any_positive || x > 0.0;
    if (!any_positive)
        throw DegenerateDataError("all observations are zero; the scale is not identified");

    Chain chain;
    chain.index = chain_index;
    chain.seed = chain_seed(cfg.seed, chain_index);
    chain.config = cfg;
    Rng rng = make_rng(chain.seed);

    const std::size_t n = d.size();
    const std::size_t keep = cfg.retained();
    chain.draws.reserve(keep);
    chain.lambda_means.assign(n, 0.0);
    if (cfg.store_lambda_traces)
        chain.lambda_traces.reserve(keep * n);

    AugmentedState state;
    state.alpha = cfg.init_alpha ? *cfg.init_alpha : gamma_variate(rng, 1.0, 1.0);
    state.beta = cfg.init_beta ? *cfg.init_beta : gamma_variate(rng, 1.0, 1.0);
    state.lambda.assign(n, 1.0);

    for (std::size_t it = 0; it < cfg.iterations; ++it) {
        sample_lambda_into(std::span<double>(state.lambda), state.alpha, state.beta, d, rng);
        state.beta = sample_beta(std::span<const double>(state.lambda), d, rng);
        const auto step =
            mh_step_alpha(state.alpha, kind, n, sum_log(state.lambda), cfg.tuning, rng);
        state.alpha = step.value;
        ++chain.proposed;
        if (step.accepted)
            ++chain.accepted;

        if (it < cfg.burn_in || (it - cfg.burn_in + 1) % cfg.thin != 0)
            continue;
        chain.draws.push_back({state.alpha, state.beta});
        for (std::size_t i = 0; i < n; ++i)
            chain.lambda_means[i] += state.lambda[i];
        if (cfg.store_lambda_traces)
            chain.lambda_traces.insert(chain.lambda_traces.end(), state.lambda.begin(),
                                       state.lambda.end());
    }
    if (!chain.draws.empty()) {
        const double k = static_cast<double>(chain.draws.size());
        for (auto& m : chain.lambda_means)
            m /= k;
    }
    return chain;
}

enum class Execution { Serial, Parallel };

/// cfg.chains independent chains; the result is ordered by chain index and
/// does not depend on `exec`.
inline ChainSet run_chains(const Dataset& d, PriorKind kind, const McmcConfig& cfg,
                           Execution exec = Execution::Parallel) {
    cfg.validate();
    require_proper(kind, d.size());
    ChainSet set;
    set.chains.reserve(cfg.chains);
    if (exec == Execution::Serial || cfg.chains == 1) {
        for (std::size_t i = 0; i < cfg.chains; ++i)
            set.chains.push_back(run_chain(d, kind, cfg, i));
        return set;
    }
    std::vector<std::future<Chain>> pending;
    pending.reserve(cfg.chains);
    for (std::size_t i = 0; i < cfg.chains; ++i)
        pending.push_back(
            std::async(std::launch::async, [&d, kind, &cfg, i] { return run_chain(d, kind, cfg, i); }));
    for (auto& f : pending)
        set.chains.push_back(f.get());
    return set;
}

}  // namespace lomax
