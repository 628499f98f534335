#pragma once

// Dataset ingestion and the on-disk artifacts of a fit:
//   summary.json   posterior summaries (6 significant digits)
//   trace.csv      chain,draw_index,alpha,beta (full precision)
//   outliers.csv   index,x,lambda_mean,flagged

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "lomax/diagnostics.hpp"
#include "lomax/distribution.hpp"
#include "lomax/errors.hpp"
#include "lomax/priors.hpp"
#include "lomax/sampler.hpp"

namespace lomax {

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && is_space(s.front()))
        s.remove_prefix(1);
    while (!s.empty() && is_space(s.back()))
        s.remove_suffix(1);
    return s;
}

inline bool parse_double(std::string_view s, double& out) {
    if (!s.empty() && s.front() == '+')
        s.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

inline std::string full_precision(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Rounds to 6 significant digits so the JSON writer prints short numbers.
inline double six_digits(double v) {
    if (!std::isfinite(v))
        return v;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return std::strtod(buf, nullptr);
}

}  // namespace detail

/// One non-negative number per line. Blank lines and '#' comments are
/// skipped; the first content line may be a non-numeric CSV header.
inline Dataset parse_dataset(std::istream& in) {
    std::vector<double> values;
    std::string raw;
    std::size_t line_no = 0;
    bool seen_content = false;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto line = detail::trim(raw);
        if (line.empty() || line.front() == '#')
            continue;
        double v = 0.0;
        const bool ok = detail::parse_double(line, v);
        if (!ok && !seen_content) {
            seen_content = true;  // header row
            continue;
        }
        seen_content = true;
        if (!ok || !std::isfinite(v))
            throw DataError("cannot parse '" + std::string(line) + "' as a number", line_no);
        if (v < 0.0)
            throw DataError("negative value " + std::string(line), line_no);
        values.push_back(v);
    }
    if (values.empty())
        throw DataError("dataset is empty");
    return Dataset(std::move(values));
}

inline Dataset parse_dataset(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open " + path.string());
    try {
        return parse_dataset(in);
    } catch (const DataError& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

inline void write_trace_csv(const ChainSet& set, std::ostream& os) {
    os << "chain,draw_index,alpha,beta\n";
    for (const auto& c : set.chains)
        for (std::size_t k = 0; k < c.draws.size(); ++k)
            os << c.index << ',' << k << ',' << detail::full_precision(c.draws[k].alpha) << ','
               << detail::full_precision(c.draws[k].beta) << '\n';
}

inline void write_outlier_csv(const std::vector<OutlierScore>& scores, std::ostream& os) {
    os << "index,x,lambda_mean,flagged\n";
    for (const auto& s : scores)
        os << s.index << ',' << detail::full_precision(s.x) << ','
           << detail::full_precision(s.lambda_mean) << ',' << (s.flagged ? 1 : 0) << '\n';
}

struct FitSummary {
    PriorKind prior;
    std::size_t n;
    SummaryStats alpha;
    SummaryStats beta;
    double psrf_alpha;
    double psrf_beta;
    double acceptance_rate;
    McmcConfig config;
};

inline FitSummary summarize_chains(const ChainSet& set, PriorKind prior, std::size_t n,
                                   const McmcConfig& cfg) {
    std::vector<double> alphas;
    std::vector<double> betas;
    for (const auto& d : set.pooled()) {
        alphas.push_back(d.alpha);
        betas.push_back(d.beta);
    }
    FitSummary s{prior, n, summarize(alphas), summarize(betas), NAN, NAN, acceptance_rate(set), cfg};
    if (set.chains.size() >= 2) {
        s.psrf_alpha = gelman_rubin(set, Parameter::Alpha);
        s.psrf_beta = gelman_rubin(set, Parameter::Beta);
    }
    return s;
}

inline nlohmann::ordered_json to_json(const FitSummary& s) {
    using detail::six_digits;
    auto stats = [](const SummaryStats& st) {
        nlohmann::ordered_json j;
        j["mean"] = six_digits(st.mean);
        j["sd"] = six_digits(st.sd);
        j["ci_low"] = six_digits(st.ci_low);
        j["ci_high"] = six_digits(st.ci_high);
        return j;
    };
    auto maybe = [](double v) -> nlohmann::ordered_json {
        if (std::isnan(v))
            return nullptr;
        return six_digits(v);
    };
    nlohmann::ordered_json j;
    j["prior"] = std::string(to_string(s.prior));
    j["n"] = s.n;
    j["beta"] = stats(s.beta);
    j["alpha"] = stats(s.alpha);
    j["psrf"] = {{"beta", maybe(s.psrf_beta)}, {"alpha", maybe(s.psrf_alpha)}};
    j["acceptance_rate"] = six_digits(s.acceptance_rate);
    j["seed"] = s.config.seed;
    j["mcmc"] = {{"iterations", s.config.iterations}, {"burn_in", s.config.burn_in},
                 {"thin", s.config.thin},             {"chains", s.config.chains},
                 {"tuning", s.config.tuning}};
    return j;
}

}  // namespace lomax
