#pragma once

// Monte Carlo study: simulate m datasets per sample size from known
// parameters, fit each one, and report bias and rmse of the posterior means.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "lomax/diagnostics.hpp"
#include "lomax/distribution.hpp"
#include "lomax/priors.hpp"
#include "lomax/random.hpp"
#include "lomax/sampler.hpp"

namespace lomax {

/// mean(estimates) - truth.
inline double bias(std::span<const double> estimates, double truth) {
    if (estimates.empty())
        throw DomainError("bias: no estimates");
    return sample_mean(estimates) - truth;
}

/// sqrt(mean((estimate - truth)^2)).
inline double rmse(std::span<const double> estimates, double truth) {
    if (estimates.empty())
        throw DomainError("rmse: no estimates");
    double ss = 0.0;
    for (double e : estimates)
        ss += (e - truth) * (e - truth);
    return std::sqrt(ss / static_cast<double>(estimates.size()));
}

struct StudyConfig {
    LomaxParams true_params{2.0, 1.5};
    std::vector<std::size_t> sample_sizes{50, 100, 150, 200, 300, 500};
    std::size_t replications = 500;
    std::vector<PriorKind> priors{PriorKind::JeffreysDependent, PriorKind::Reference};
    McmcConfig mcmc{};
    std::uint64_t master_seed = 2015;
    /// 0 means std::thread::hardware_concurrency().
    std::size_t threads = 0;

    void validate() const {
        if (replications == 0)
            throw ConfigError("replications must be >= 1");
        if (sample_sizes.empty())
            throw ConfigError("at least one sample size is required");
        for (auto n : sample_sizes)
            if (n < 2)
                throw ConfigError("sample sizes must be >= 2");
        if (priors.empty())
            throw ConfigError("at least one prior is required");
        mcmc.validate();
    }
};

/// What one fitted replicate contributes to its cell.
struct ReplicateResult {
    SummaryStats alpha;
    SummaryStats beta;
    double accept_rate = std::numeric_limits<double>::quiet_NaN();
    double psrf_alpha = std::numeric_limits<double>::quiet_NaN();
    double psrf_beta = std::numeric_limits<double>::quiet_NaN();
};

struct CellReport {
    PriorKind prior;
    std::size_t n;
    Parameter parameter;
    double mean;     ///< mean of the replicate posterior means
    double sd;       ///< mean posterior SD
    double ci_low;   ///< mean lower 95% bound
    double ci_high;  ///< mean upper 95% bound
    double bias;
    double rmse;
    double accept_rate;
    double psrf;
};

struct SimReport {
    std::vector<CellReport> cells;

    const CellReport& at(PriorKind prior, std::size_t n, Parameter parameter) const {
        for (const auto& c : cells)
            if (c.prior == prior && c.n == n && c.parameter == parameter)
                return c;
        throw std::out_of_range("SimReport: no such cell");
    }
};

using Fitter = std::function<ChainSet(const Dataset&, PriorKind, const McmcConfig&)>;

inline ChainSet default_fitter(const Dataset& d, PriorKind kind, const McmcConfig& cfg) {
    return run_chains(d, kind, cfg, Execution::Serial);
}

inline ReplicateResult summarize_fit(const ChainSet& set) {
    std::vector<double> alphas;
    std::vector<double> betas;
    for (const auto& c : set.chains) {
        auto a = c.alphas();
        auto b = c.betas();
        alphas.insert(alphas.end(), a.begin(), a.end());
        betas.insert(betas.end(), b.begin(), b.end());
    }
    ReplicateResult r;
    r.alpha = summarize(alphas);
    r.beta = summarize(betas);
    if (std::any_of(set.chains.begin(), set.chains.end(), [](const Chain& c) { return c.proposed > 0; }))
        r.accept_rate = acceptance_rate(set);
    if (set.chains.size() >= 2) {
        r.psrf_alpha = gelman_rubin(set, Parameter::Alpha);
        r.psrf_beta = gelman_rubin(set, Parameter::Beta);
    }
    return r;
}

/// Aggregates the replicates of one (prior, n) cell for one parameter.
inline CellReport aggregate_cell(PriorKind prior, std::size_t n, Parameter parameter, double truth,
                                 std::span<const ReplicateResult> reps) {
    if (reps.empty())
        throw DomainError("aggregate_cell: no replicates");
    std::vector<double> est, sd, lo, hi, acc, psrf;
    for (const auto& r : reps) {
        const SummaryStats& s = parameter == Parameter::Alpha ? r.alpha : r.beta;
        est.push_back(s.mean);
        sd.push_back(s.sd);
        lo.push_back(s.ci_low);
        hi.push_back(s.ci_high);
        acc.push_back(r.accept_rate);
        psrf.push_back(parameter == Parameter::Alpha ? r.psrf_alpha : r.psrf_beta);
    }
    return {prior,           n,
            parameter,       sample_mean(est),
            sample_mean(sd), sample_mean(lo),
            sample_mean(hi), bias(est, truth),
            rmse(est, truth), sample_mean(acc),
            sample_mean(psrf)};
}

/// Seed of the j-th simulated dataset of size n. Shared across priors so
/// every prior is fitted to the same data.
inline std::uint64_t dataset_seed(std::uint64_t master, std::size_t n, std::size_t j) {
    return splitmix64(splitmix64(splitmix64(master) ^ n) ^ j);
}

inline std::uint64_t fit_seed(std::uint64_t master, PriorKind kind, std::size_t n, std::size_t j) {
    return splitmix64(dataset_seed(master, n, j) ^ (0x5EEDULL + static_cast<std::uint64_t>(kind)));
}

/// Error raised when a replicate fails; names the cell and replicate.
class StudyError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline SimReport run_study(const StudyConfig& cfg, const Fitter& fit = default_fitter) {
    cfg.validate();

    struct Task {
        std::size_t prior_idx;
        std::size_t size_idx;
        std::size_t rep;
    };
    std::vector<Task> tasks;
    for (std::size_t p = 0; p < cfg.priors.size(); ++p)
        for (std::size_t s = 0; s < cfg.sample_sizes.size(); ++s)
            for (std::size_t j = 0; j < cfg.replications; ++j)
                tasks.push_back({p, s, j});

    std::vector<ReplicateResult> results(tasks.size());
    std::vector<std::exception_ptr> errors(tasks.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t t = next++; t < tasks.size(); t = next++) {
            const Task& task = tasks[t];
            const PriorKind kind = cfg.priors[task.prior_idx];
            const std::size_t n = cfg.sample_sizes[task.size_idx];
            try {
                Rng rng = make_rng(dataset_seed(cfg.master_seed, n, task.rep));
                const Dataset data = sample(cfg.true_params, rng, n);
                McmcConfig mcmc = cfg.mcmc;
                mcmc.seed = fit_seed(cfg.master_seed, kind, n, task.rep);
                results[t] = summarize_fit(fit(data, kind, mcmc));
            } catch (...) {
                errors[t] = std::current_exception();
            }
        }
    };

    std::size_t threads = cfg.threads ? cfg.threads : std::thread::hardware_concurrency();
    threads = std::clamp<std::size_t>(threads, 1, tasks.size());
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t i = 0; i < threads; ++i)
            pool.emplace_back(worker);
    }

    for (std::size_t t = 0; t < tasks.size(); ++t) {
        if (!errors[t])
            continue;
        const Task& task = tasks[t];
        std::string what = "unknown error";
        try {
            std::rethrow_exception(errors[t]);
        } catch (const std::exception& e) {
            what = e.what();
        } catch (...) {
        }
        throw StudyError("replicate " + std::to_string(task.rep) + " of cell (prior=" +
                         std::string(to_string(cfg.priors[task.prior_idx])) +
                         ", n=" + std::to_string(cfg.sample_sizes[task.size_idx]) +
                         ") failed: " + what);
    }

    SimReport report;
    const std::size_t m = cfg.replications;
    for (std::size_t p = 0; p < cfg.priors.size(); ++p) {
        for (std::size_t s = 0; s < cfg.sample_sizes.size(); ++s) {
            const std::size_t offset = (p * cfg.sample_sizes.size() + s) * m;
            std::span<const ReplicateResult> reps(results.data() + offset, m);
            const PriorKind kind = cfg.priors[p];
            const std::size_t n = cfg.sample_sizes[s];
            report.cells.push_back(
                aggregate_cell(kind, n, Parameter::Beta, cfg.true_params.beta(), reps));
            report.cells.push_back(
                aggregate_cell(kind, n, Parameter::Alpha, cfg.true_params.alpha(), reps));
        }
    }
    return report;
}

inline constexpr const char* parameter_name(Parameter p) noexcept {
    return p == Parameter::Alpha ? "alpha" : "beta";
}

namespace detail {
inline std::string format_number(double v, const char* fmt) {
    if (std::isnan(v))
        return "NA";
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}
}  // namespace detail

inline void write_report_csv(const SimReport& report, std::ostream& os) {
    os << "prior,n,parameter,mean,sd,ci_low,ci_high,bias,rmse,accept_rate,psrf\n";
    auto num = [](double v) { return detail::format_number(v, "%.10g"); };
    for (const auto& c : report.cells) {
        os << to_string(c.prior) << ',' << c.n << ',' << parameter_name(c.parameter) << ','
           << num(c.mean) << ',' << num(c.sd) << ',' << num(c.ci_low) << ',' << num(c.ci_high)
           << ',' << num(c.bias) << ',' << num(c.rmse) << ',' << num(c.accept_rate) << ','
           << num(c.psrf) << '\n';
    }
}

inline void print_report_table(const SimReport& report, std::ostream& os) {
    char line[256];
    std::snprintf(line, sizeof line, "%-15s %5s %-6s %9s %9s %21s %9s %9s %7s %7s\n", "prior", "n",
                  "param", "mean", "SD", "95% CI", "bias", "rmse", "accept", "psrf");
    os << line;
    for (const auto& c : report.cells) {
        const std::string ci = "[" + detail::format_number(c.ci_low, "%.4f") + " ; " +
                               detail::format_number(c.ci_high, "%.4f") + "]";
        std::snprintf(line, sizeof line, "%-15s %5zu %-6s %9.4f %9.4f %21s %9.4f %9.4f %7s %7s\n",
                      std::string(to_string(c.prior)).c_str(), c.n, parameter_name(c.parameter),
                      c.mean, c.sd, ci.c_str(), c.bias, c.rmse,
                      detail::format_number(c.accept_rate, "%.4f").c_str(),
                      detail::format_number(c.psrf, "%.4f").c_str());
        os << line;
    }
}

}  // namespace lomax
