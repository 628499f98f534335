#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "lomax/diagnostics.hpp"

using namespace lomax;

namespace {

Chain chain_with(std::vector<double> alphas, std::vector<double> betas = {}) {
    Chain c;
    if (betas.empty())
        betas = alphas;
    for (std::size_t i = 0; i < alphas.size(); ++i)
        c.draws.push_back({alphas[i], betas[i]});
    return c;
}

}  // namespace

TEST(Summarize, ConstantVector) {
    const std::vector<double> v(10, 3.25);
    const auto s = summarize(v);
    EXPECT_EQ(s.mean, 3.25);
    EXPECT_EQ(s.sd, 0.0);
    EXPECT_EQ(s.ci_low, 3.25);
    EXPECT_EQ(s.ci_high, 3.25);
}

TEST(Summarize, SmallExample) {
    const std::vector<double> v{1, 2, 3, 4};
    const auto s = summarize(v);
    EXPECT_DOUBLE_EQ(s.mean, 2.5);
    EXPECT_NEAR(s.sd, 1.2909944487358056, 1e-15);
    // linear interpolation: position 0.075 and 2.925
    EXPECT_NEAR(s.ci_low, 1.075, 1e-15);
    EXPECT_NEAR(s.ci_high, 3.925, 1e-15);
}

TEST(Summarize, TooFewDraws) {
    EXPECT_THROW(summarize(std::vector<double>{1.0}), DomainError);
}

TEST(Summarize, UniformQuantilesConverge) {
    Rng rng = make_rng(3);
    std::vector<double> v(100000);
    for (auto& x : v)
        x = uniform_open(rng);
    const auto s = summarize(v);
    EXPECT_NEAR(s.ci_low, 0.025, 0.005);
    EXPECT_NEAR(s.ci_high, 0.975, 0.005);
    EXPECT_LE(s.ci_low, s.ci_high);
}

TEST(Summarize, PermutationInvariant) {
    Rng rng = make_rng(4);
    std::vector<double> v(501);
    for (auto& x : v)
        x = standard_normal(rng);
    const auto a = summarize(v);
    std::shuffle(v.begin(), v.end(), rng);
    const auto b = summarize(v);
    EXPECT_NEAR(a.mean, b.mean, 1e-14);
    EXPECT_NEAR(a.sd, b.sd, 1e-14);
    EXPECT_EQ(a.ci_low, b.ci_low);
    EXPECT_EQ(a.ci_high, b.ci_high);
}

TEST(GelmanRubin, HandComputedExample) {
    EXPECT_NEAR(gelman_rubin({{1, 2, 3}, {2, 3, 4}}), std::sqrt(7.0 / 6.0), 1e-14);
}

TEST(GelmanRubin, IdenticalChainsBelowOne) {
    const std::vector<double> c{0.3, 1.2, -0.4, 2.2, 0.9};
    EXPECT_NEAR(gelman_rubin({c, c}), std::sqrt(4.0 / 5.0), 1e-14);
}

TEST(GelmanRubin, Errors) {
    EXPECT_THROW(gelman_rubin({{1, 2, 3}}), DomainError);
    EXPECT_THROW(gelman_rubin({{1, 2, 3}, {1, 2}}), DomainError);
    EXPECT_THROW(gelman_rubin({{1}, {2}}), DomainError);
}

TEST(GelmanRubin, AffineInvariant) {
    Rng rng = make_rng(5);
    std::vector<std::vector<double>> chains(3, std::vector<double>(200));
    for (auto& c : chains)
        for (auto& x : c)
            x = standard_normal(rng) + 0.1 * static_cast<double>(&c - chains.data());
    const double base = gelman_rubin(chains);
    for (auto [a, b] : {std::pair{2.5, -1.0}, std::pair{-0.3, 10.0}}) {
        auto t = chains;
        for (auto& c : t)
            for (auto& x : c)
                x = a * x + b;
        EXPECT_NEAR(gelman_rubin(t), base, 1e-12);
    }
}

TEST(GelmanRubin, ChainSetSelectsParameter) {
    ChainSet set;
    set.chains.push_back(chain_with({1, 2, 3}, {10, 10, 11}));
    set.chains.push_back(chain_with({2, 3, 4}, {10, 11, 11}));
    EXPECT_NEAR(gelman_rubin(set, Parameter::Alpha), std::sqrt(7.0 / 6.0), 1e-14);
    EXPECT_NE(gelman_rubin(set, Parameter::Beta), gelman_rubin(set, Parameter::Alpha));
}

TEST(AcceptanceRate, Examples) {
    Chain c;
    c.accepted = 931;
    c.proposed = 1000;
    EXPECT_DOUBLE_EQ(acceptance_rate(c), 0.931);
    c.accepted = 0;
    EXPECT_EQ(acceptance_rate(c), 0.0);
    c.proposed = 0;
    EXPECT_THROW(acceptance_rate(c), DomainError);
}

TEST(Outliers, SingleObservationNeverFlagged) {
    ChainSet set;
    auto c = chain_with({1, 2});
    c.lambda_means = {0.01};
    set.chains.push_back(c);
    const auto s = outlier_scores(set, Dataset({1e9}));
    ASSERT_EQ(s.size(), 1u);
    EXPECT_FALSE(s[0].flagged);
}

TEST(Outliers, PooledMeanWeightsByDraws) {
    ChainSet set;
    auto a = chain_with({1, 1, 1});
    a.lambda_means = {1.0, 2.0};
    auto b = chain_with({1});
    b.lambda_means = {3.0, 6.0};
    set.chains = {a, b};
    const auto s = outlier_scores(set, Dataset({1.0, 2.0}));
    EXPECT_DOUBLE_EQ(s[0].lambda_mean, 1.5);
    EXPECT_DOUBLE_EQ(s[1].lambda_mean, 3.0);
}

TEST(Outliers, MismatchedLambdaLengthIsError) {
    ChainSet set;
    auto c = chain_with({1, 2});
    c.lambda_means = {1.0};
    set.chains.push_back(c);
    EXPECT_THROW(outlier_scores(set, Dataset({1.0, 2.0})), DomainError);
}

TEST(Outliers, HomogeneousDataRarelyFlagged) {
    Rng rng = make_rng(21);
    const auto d = sample({2.0, 1.5}, rng, 200);
    McmcConfig cfg;
    cfg.iterations = 3000;
    cfg.burn_in = 500;
    cfg.thin = 5;
    const auto set = run_chains(d, PriorKind::Reference, cfg);
    const auto s = outlier_scores(set, d);
    const auto flagged = std::count_if(s.begin(), s.end(), [](const auto& o) { return o.flagged; });
    EXPECT_LE(static_cast<double>(flagged), 0.10 * 200);
}

TEST(Outliers, ExtremeValueGetsMinimumScore) {
    Rng rng = make_rng(22);
    const auto base = sample({2.0, 1.5}, rng, 100);
    std::vector<double> x(base.begin(), base.end());
    x.push_back(100.0 * *std::max_element(x.begin(), x.end()));
    const Dataset d(x);
    McmcConfig cfg;
    cfg.iterations = 3000;
    cfg.burn_in = 500;
    cfg.thin = 5;
    const auto s = outlier_scores(run_chains(d, PriorKind::Reference, cfg), d);
    const auto min_it = std::min_element(s.begin(), s.end(), [](const auto& l, const auto& r) {
        return l.lambda_mean < r.lambda_mean;
    });
    EXPECT_EQ(min_it->index, x.size() - 1);
    EXPECT_TRUE(s.back().flagged);
}

TEST(Outliers, ConditionalMeanDecreasesInX) {
    const double alpha = 1.3, beta = 2.0;
    double prev = (alpha + 1);
    for (double x = 0.5; x < 1000; x *= 2) {
        const double m = (alpha + 1) / (1 + x / beta);
        EXPECT_LT(m, prev);
        prev = m;
    }
}
