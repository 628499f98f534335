#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "lomax/distribution.hpp"
#include "lomax/errors.hpp"
#include "lomax/sampler.hpp"

namespace lomax {

struct SummaryStats {
    double mean = 0.0;
    double sd = 0.0;
    double ci_low = 0.0;   ///< 2.5% quantile
    double ci_high = 0.0;  ///< 97.5% quantile
};

/// Quantile of already-sorted data, linear interpolation between order
/// statistics (position p * (n - 1)).
inline double quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty())
        throw DomainError("quantile: empty input");
    if (!(p >= 0.0 && p <= 1.0))
        throw DomainError("quantile: p must lie in [0, 1]");
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

inline double quantile(std::vector<double> values, double p) {
    std::sort(values.begin(), values.end());
    return quantile_sorted(values, p);
}

inline double sample_mean(std::span<const double> v) {
    if (v.empty())
        throw DomainError("sample_mean: empty input");
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

/// Unbiased sample variance (divisor n - 1).
inline double sample_variance(std::span<const double> v) {
    if (v.size() < 2)
        throw DomainError("sample_variance: at least two values are required");
    const double m = sample_mean(v);
    double ss = 0.0;
    for (double x : v)
        ss += (x - m) * (x - m);
    return ss / static_cast<double>(v.size() - 1);
}

inline SummaryStats summarize(std::span<const double> draws) {
    if (draws.size() < 2)
        throw DomainError("summarize: at least two draws are required");
    std::vector<double> sorted(draws.begin(), draws.end());
    std::sort(sorted.begin(), sorted.end());
    SummaryStats s;
    s.mean = sample_mean(draws);
    s.sd = std::sqrt(sample_variance(draws));
    s.ci_low = quantile_sorted(sorted, 0.025);
    s.ci_high = quantile_sorted(sorted, 0.975);
    return s;
}

/// Potential scale reduction factor of M equal-length chains of length L:
///
///   W = mean within-chain variance, B = L * variance of the chain means,
///   PSRF = sqrt(((L - 1)/L * W + B/L) / W).
///
/// No degrees-of-freedom correction. Two identical chains give
/// sqrt((L - 1)/L), which is returned as is.
inline double gelman_rubin(const std::vector<std::vector<double>>& chains) {
    if (chains.size() < 2)
        throw DomainError("gelman_rubin: at least two chains are required");
    const std::size_t len = chains.front().size();
    if (len < 2)
        throw DomainError("gelman_rubin: each chain needs at least two draws");
    for (const auto& c : chains)
        if (c.size() != len)
            throw DomainError("gelman_rubin: chains must have equal lengths");

    std::vector<double> means;
    means.reserve(chains.size());
    double within = 0.0;
    for (const auto& c : chains) {
        means.push_back(sample_mean(c));
        within += sample_variance(c);
    }
    within /= static_cast<double>(chains.size());
    const double L = static_cast<double>(len);
    const double between = L * sample_variance(means);
    return std::sqrt(((L - 1.0) / L * within + between / L) / within);
}

enum class Parameter { Alpha, Beta };

inline double gelman_rubin(const ChainSet& set, Parameter which) {
    std::vector<std::vector<double>> traces;
    traces.reserve(set.chains.size());
    for (const auto& c : set.chains)
        traces.push_back(which == Parameter::Alpha ? c.alphas() : c.betas());
    return gelman_rubin(traces);
}

/// Accepted / proposed alpha moves, burn-in included.
inline double acceptance_rate(const Chain& chain) {
    if (chain.proposed == 0)
        throw DomainError("acceptance_rate: no proposals recorded");
    return static_cast<double>(chain.accepted) / static_cast<double>(chain.proposed);
}

/// Pooled over all chains of the set.
inline double acceptance_rate(const ChainSet& set) {
    std::size_t accepted = 0;
    std::size_t proposed = 0;
    for (const auto& c : set.chains) {
        accepted += c.accepted;
        proposed += c.proposed;
    }
    if (proposed == 0)
        throw DomainError("acceptance_rate: no proposals recorded");
    return static_cast<double>(accepted) / static_cast<double>(proposed);
}

struct OutlierRule {
    double score_quantile = 0.05;
    double data_quantile = 0.95;
};

struct OutlierScore {
    std::size_t index;
    double x;
    double lambda_mean;
    bool flagged;
};

/// Scores each observation by the pooled posterior mean of its mixing
/// variable. Large x_i pull lambda_i towards zero, so an observation is
/// flagged when its score is below the `score_quantile` of all scores and
/// x_i is above the `data_quantile` of the data.
inline std::vector<OutlierScore> outlier_scores(const ChainSet& set, const Dataset& d,
                                                const OutlierRule& rule = {}) {
    const std::size_t n = d.size();
    std::vector<double> scores(n, 0.0);
    double weight = 0.0;
    for (const auto& c : set.chains) {
        if (c.lambda_means.size() != n)
            throw DomainError("outlier_scores: chain lambda means do not match the dataset");
        const double w = static_cast<double>(c.draws.size());
        for (std::size_t i = 0; i < n; ++i)
            scores[i] += w * c.lambda_means[i];
        weight += w;
    }
    if (!(weight > 0.0))
        throw DomainError("outlier_scores: no retained draws");
    for (auto& s : scores)
        s /= weight;

    std::vector<OutlierScore> out;
    out.reserve(n);
    if (n < 2) {
        for (std::size_t i = 0; i < n; ++i)
            out.push_back({i, d[i], scores[i], false});
        return out;
    }
    const double score_cut = quantile(scores, rule.score_quantile);
    const double data_cut = quantile(std::vector<double>(d.begin(), d.end()), rule.data_quantile);
    for (std::size_t i = 0; i < n; ++i)
        out.push_back({i, d[i], scores[i], scores[i] < score_cut && d[i] > data_cut});
    return out;
}

}  // namespace lomax
