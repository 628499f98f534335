#pragma once

// The fit and simulate commands, minus argument parsing. Shared by the
// command-line tool and the tests.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>

#include "lomax/diagnostics.hpp"
#include "lomax/io.hpp"
#include "lomax/sampler.hpp"
#include "lomax/simulation.hpp"

namespace lomax::app {

namespace fs = std::filesystem;

/// Raised when an artifact cannot be written.
class OutputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// $LOMAX_OUT_DIR when set, otherwise the current directory.
inline fs::path default_output_dir() {
    if (const char* env = std::getenv("LOMAX_OUT_DIR"); env && *env)
        return env;
    return ".";
}

/// McmcConfig with the application-run defaults (80k iterations, 20k burn-in,
/// thin 20, two chains).
inline McmcConfig fit_defaults() {
    McmcConfig cfg;
    cfg.iterations = 80000;
    cfg.burn_in = 20000;
    cfg.thin = 20;
    cfg.chains = 2;
    return cfg;
}

namespace detail {
template <class Writer>
void write_file(const fs::path& path, Writer&& writer) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw OutputError("cannot open " + path.string() + " for writing");
    writer(out);
    out.flush();
    if (!out)
        throw OutputError("failed writing " + path.string());
}

inline void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw OutputError("cannot create " + dir.string() + ": " + ec.message());
}
}  // namespace detail

struct FitArtifacts {
    fs::path summary;
    fs::path trace;
    fs::path outliers;
};

inline FitArtifacts artifact_paths(const fs::path& dir) {
    return {dir / "summary.json", dir / "trace.csv", dir / "outliers.csv"};
}

struct FitOutcome {
    FitSummary summary;
    ChainSet chains;
    std::vector<OutlierScore> outliers;
    FitArtifacts files;
};

inline FitOutcome run_fit(const Dataset& data, PriorKind prior, const McmcConfig& cfg,
                          const fs::path& out_dir, const OutlierRule& rule = {}) {
    cfg.validate();
    require_proper(prior, data.size());

    ChainSet chains = run_chains(data, prior, cfg);
    FitOutcome result{summarize_chains(chains, prior, data.size(), cfg), std::move(chains), {},
                      artifact_paths(out_dir)};
    result.outliers = outlier_scores(result.chains, data, rule);

    detail::ensure_dir(out_dir);
    detail::write_file(result.files.summary,
                       [&](std::ostream& os) { os << to_json(result.summary).dump(2) << '\n'; });
    detail::write_file(result.files.trace,
                       [&](std::ostream& os) { write_trace_csv(result.chains, os); });
    detail::write_file(result.files.outliers,
                       [&](std::ostream& os) { write_outlier_csv(result.outliers, os); });
    return result;
}

inline fs::path simulation_csv_path(const fs::path& dir) { return dir / "simulation.csv"; }

inline SimReport run_simulate(const StudyConfig& cfg, const fs::path& out_dir, std::ostream& table) {
    cfg.validate();
    SimReport report = run_study(cfg);
    detail::ensure_dir(out_dir);
    detail::write_file(simulation_csv_path(out_dir),
                       [&](std::ostream& os) { write_report_csv(report, os); });
    print_report_table(report, table);
    return report;
}

}  // namespace lomax::app
