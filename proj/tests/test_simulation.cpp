#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "lomax/simulation.hpp"

using namespace lomax;

namespace {

StudyConfig tiny_study() {
    StudyConfig cfg;
    cfg.sample_sizes = {20, 60};
    cfg.replications = 4;
    cfg.priors = {PriorKind::JeffreysDependent, PriorKind::Reference};
    cfg.mcmc.iterations = 600;
    cfg.mcmc.burn_in = 100;
    cfg.mcmc.thin = 5;
    cfg.master_seed = 99;
    cfg.threads = 1;
    return cfg;
}

std::string csv_of(const SimReport& r) {
    std::ostringstream os;
    write_report_csv(r, os);
    return os.str();
}

ReplicateResult with_estimates(double alpha, double beta) {
    ReplicateResult r;
    r.alpha = {alpha, 0.1, alpha - 0.2, alpha + 0.2};
    r.beta = {beta, 0.2, beta - 0.4, beta + 0.4};
    r.accept_rate = 0.5;
    r.psrf_alpha = r.psrf_beta = 1.0;
    return r;
}

}  // namespace

TEST(Bias, Examples) {
    const double theta = 1.7;
    EXPECT_EQ(bias(std::vector<double>{theta}, theta), 0.0);
    EXPECT_NEAR(bias(std::vector<double>{theta + 1, theta - 1}, theta), 0.0, 1e-15);
    EXPECT_DOUBLE_EQ(bias(std::vector<double>{3, 4}, 2), 1.5);
    EXPECT_THROW(bias(std::vector<double>{}, 1.0), DomainError);
}

TEST(Rmse, Examples) {
    const double theta = 0.4;
    EXPECT_EQ(rmse(std::vector<double>(5, theta), theta), 0.0);
    EXPECT_NEAR(rmse(std::vector<double>{theta + 1, theta - 1}, theta), 1.0, 1e-15);
    EXPECT_NEAR(rmse(std::vector<double>{3, 4}, 2), 1.5811388300841898, 1e-15);
    EXPECT_THROW(rmse(std::vector<double>{}, 1.0), DomainError);
}

TEST(RunStudy, StubFitterReturningTruthGivesZeroError) {
    auto cfg = tiny_study();
    cfg.replications = 1;
    const Fitter truth = [&](const Dataset&, PriorKind, const McmcConfig&) {
        ChainSet set;
        for (std::size_t c = 0; c < 2; ++c) {
            Chain ch;
            ch.draws.assign(10, Draw{1.5, 2.0});
            ch.accepted = 5;
            ch.proposed = 10;
            set.chains.push_back(ch);
        }
        return set;
    };
    const auto report = run_study(cfg, truth);
    ASSERT_EQ(report.cells.size(), 2u * 2u * 2u);
    for (const auto& c : report.cells) {
        EXPECT_EQ(c.bias, 0.0);
        EXPECT_EQ(c.rmse, 0.0);
        EXPECT_EQ(c.accept_rate, 0.5);
    }
}

TEST(AggregateCell, InjectedEstimates) {
    const std::vector<ReplicateResult> reps{with_estimates(2.5, 3.0), with_estimates(0.5, 1.0)};
    const auto a = aggregate_cell(PriorKind::Reference, 50, Parameter::Alpha, 1.5, reps);
    EXPECT_NEAR(a.bias, 0.0, 1e-15);
    EXPECT_NEAR(a.rmse, 1.0, 1e-15);
    EXPECT_NEAR(a.mean, 1.5, 1e-15);
    const auto b = aggregate_cell(PriorKind::Reference, 50, Parameter::Beta, 2.0, reps);
    EXPECT_NEAR(b.bias, 0.0, 1e-15);
    EXPECT_NEAR(b.rmse, 1.0, 1e-15);
    EXPECT_DOUBLE_EQ(b.sd, 0.2);
}

TEST(RunStudy, RmseBoundsBiasInEveryCell) {
    const auto report = run_study(tiny_study());
    for (const auto& c : report.cells) {
        EXPECT_GE(c.rmse, std::abs(c.bias));
        EXPECT_TRUE(std::isfinite(c.psrf));
        EXPECT_GT(c.accept_rate, 0.0);
        EXPECT_LE(c.accept_rate, 1.0);
    }
}

TEST(AggregateCell, RmseSquaredIsBiasSquaredPlusPopulationVariance) {
    Rng rng = make_rng(5);
    std::vector<ReplicateResult> reps;
    std::vector<double> est;
    for (int j = 0; j < 37; ++j) {
        const double a = 1.5 + 0.4 * standard_normal(rng) + 0.1;
        reps.push_back(with_estimates(a, 2.0));
        est.push_back(a);
    }
    const auto c = aggregate_cell(PriorKind::JeffreysDependent, 100, Parameter::Alpha, 1.5, reps);
    double m = 0.0;
    for (double e : est)
        m += e;
    m /= static_cast<double>(est.size());
    double var = 0.0;
    for (double e : est)
        var += (e - m) * (e - m);
    var /= static_cast<double>(est.size());
    EXPECT_NEAR(c.rmse * c.rmse, c.bias * c.bias + var, 1e-12);
}

TEST(RunStudy, DeterministicAcrossRunsAndThreadCounts) {
    auto cfg = tiny_study();
    const auto a = csv_of(run_study(cfg));
    const auto b = csv_of(run_study(cfg));
    cfg.threads = 3;
    const auto c = csv_of(run_study(cfg));
    EXPECT_EQ(a, b);
    EXPECT_EQ(a, c);
    cfg.master_seed = 100;
    EXPECT_NE(a, csv_of(run_study(cfg)));
}

TEST(RunStudy, FailedReplicateAbortsWithDiagnostic) {
    const auto cfg = tiny_study();
    const Fitter failing = [](const Dataset& d, PriorKind k, const McmcConfig& m) -> ChainSet {
        if (d.size() == 60)
            throw std::runtime_error("boom");
        return default_fitter(d, k, m);
    };
    try {
        run_study(cfg, failing);
        FAIL() << "expected StudyError";
    } catch (const StudyError& e) {
        const std::string what = e.what();
        EXPECT_NE(what.find("n=60"), std::string::npos);
        EXPECT_NE(what.find("boom"), std::string::npos);
    }
}

TEST(StudyConfig, Validation) {
    auto cfg = tiny_study();
    cfg.replications = 0;
    EXPECT_THROW(cfg.validate(), ConfigError);
    cfg = tiny_study();
    cfg.sample_sizes = {1};
    EXPECT_THROW(cfg.validate(), ConfigError);
    cfg = tiny_study();
    cfg.priors.clear();
    EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(ReportCsv, HeaderAndRowCount) {
    const auto report = run_study(tiny_study());
    const auto csv = csv_of(report);
    EXPECT_EQ(csv.substr(0, csv.find('\n')),
              "prior,n,parameter,mean,sd,ci_low,ci_high,bias,rmse,accept_rate,psrf");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 8);
    std::ostringstream table;
    print_report_table(report, table);
    EXPECT_NE(table.str().find("reference"), std::string::npos);
}
