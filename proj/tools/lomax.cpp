// lomax: objective-Bayes fitting of the Lomax distribution.
//
//   lomax fit --data sizes.txt --prior reference --out results/
//   lomax simulate --replications 50 --sizes 50,500 --prior reference
//   lomax synth --n 269 --beta 130 --alpha 0.5 --output synthetic.txt
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical/propriety error.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lomax/app.hpp"
#include "lomax/lomax.hpp"

namespace {

constexpr int kUsageError = 1;
constexpr int kDataError = 2;
constexpr int kNumericError = 3;

const std::map<std::string, lomax::PriorKind> kPriorNames{
    {"jeffreys", lomax::PriorKind::JeffreysDependent},
    {"jeffreys-indep", lomax::PriorKind::JeffreysIndependent},
    {"reference", lomax::PriorKind::Reference},
};

void add_mcmc_flags(CLI::App& cmd, lomax::McmcConfig& cfg, std::uint64_t& seed) {
    cmd.add_option("--iters", cfg.iterations, "Iterations per chain")->capture_default_str();
    cmd.add_option("--burnin", cfg.burn_in, "Burn-in iterations")->capture_default_str();
    cmd.add_option("--thin", cfg.thin, "Keep every k-th draw after burn-in")->capture_default_str();
    cmd.add_option("--chains", cfg.chains, "Number of chains")->capture_default_str();
    cmd.add_option("--tuning", cfg.tuning, "Proposal sd for alpha")->capture_default_str();
    cmd.add_option("--seed", seed, "Random seed")->capture_default_str();
}

int report(const char* kind, const std::exception& e, int code) {
    std::cerr << "lomax: " << kind << ": " << e.what() << '\n';
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App cli{"Objective-Bayes inference for the Lomax distribution"};
    cli.require_subcommand(1);

    // fit
    lomax::McmcConfig fit_cfg = lomax::app::fit_defaults();
    std::string data_path;
    std::string fit_prior = "jeffreys";
    std::string fit_out = lomax::app::default_output_dir().string();
    lomax::OutlierRule rule;
    auto* fit = cli.add_subcommand("fit", "Fit a dataset and write summary, trace and outlier files");
    fit->add_option("--data", data_path, "One non-negative value per line")->required();
    fit->add_option("--prior", fit_prior, "jeffreys | jeffreys-indep | reference")
        ->check(CLI::IsMember(kPriorNames))
        ->capture_default_str();
    add_mcmc_flags(*fit, fit_cfg, fit_cfg.seed);
    fit->add_option("--out", fit_out, "Output directory (default $LOMAX_OUT_DIR or .)");
    fit->add_option("--outlier-score-quantile", rule.score_quantile)->capture_default_str();
    fit->add_option("--outlier-data-quantile", rule.data_quantile)->capture_default_str();

    // simulate
    lomax::StudyConfig study;
    std::vector<std::string> sim_priors{"jeffreys", "reference"};
    double sim_beta = 2.0;
    double sim_alpha = 1.5;
    std::string sim_out = lomax::app::default_output_dir().string();
    auto* sim = cli.add_subcommand("simulate", "Monte Carlo bias/rmse study");
    sim->add_option("--prior", sim_priors, "Priors to compare (repeatable)")
        ->check(CLI::IsMember(kPriorNames))
        ->delimiter(',')
        ->capture_default_str();
    sim->add_option("--replications", study.replications)->capture_default_str();
    sim->add_option("--sizes", study.sample_sizes, "Comma-separated sample sizes")
        ->delimiter(',')
        ->capture_default_str();
    sim->add_option("--beta", sim_beta, "True scale")->capture_default_str();
    sim->add_option("--alpha", sim_alpha, "True shape")->capture_default_str();
    sim->add_option("--threads", study.threads, "Worker threads (0 = all cores)")
        ->capture_default_str();
    add_mcmc_flags(*sim, study.mcmc, study.master_seed);
    sim->add_option("--out", sim_out, "Output directory (default $LOMAX_OUT_DIR or .)");

    // synth
    std::size_t synth_n = 269;
    double synth_beta = 130.0;
    double synth_alpha = 0.5;
    std::uint64_t synth_seed = 1;
    std::string synth_output;
    auto* synth = cli.add_subcommand("synth", "Write a synthetic Lomax dataset, one value per line");
    synth->add_option("--n", synth_n)->capture_default_str();
    synth->add_option("--beta", synth_beta)->capture_default_str();
    synth->add_option("--alpha", synth_alpha)->capture_default_str();
    synth->add_option("--seed", synth_seed)->capture_default_str();
    synth->add_option("--output", synth_output, "Destination file")->required();

    try {
        cli.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return cli.exit(e) == 0 ? 0 : kUsageError;
    }

    try {
        if (*fit) {
            fit_cfg.validate();
            const auto data = lomax::parse_dataset(std::filesystem::path(data_path));
            const auto outcome =
                lomax::app::run_fit(data, kPriorNames.at(fit_prior), fit_cfg, fit_out, rule);
            std::cout << lomax::to_json(outcome.summary).dump(2) << '\n';
        } else if (*sim) {
            try {
                study.true_params = lomax::LomaxParams(sim_beta, sim_alpha);
            } catch (const lomax::DomainError& e) {
                throw lomax::ConfigError(e.what());
            }
            study.priors.clear();
            for (const auto& p : sim_priors)
                study.priors.push_back(kPriorNames.at(p));
            lomax::app::run_simulate(study, sim_out, std::cout);
        } else if (*synth) {
            lomax::Rng rng = lomax::make_rng(synth_seed);
            const auto data = lomax::sample(lomax::LomaxParams(synth_beta, synth_alpha), rng, synth_n);
            std::ofstream out(synth_output);
            out.precision(17);
            for (double x : data)
                out << x << '\n';
            if (!out.flush())
                throw lomax::app::OutputError("failed writing " + synth_output);
        }
    } catch (const lomax::ConfigError& e) {
        return report("usage error", e, kUsageError);
    } catch (const lomax::DataError& e) {
        return report("data error", e, kDataError);
    } catch (const lomax::app::OutputError& e) {
        return report("output error", e, kDataError);
    } catch (const lomax::ImproperPosteriorError& e) {
        return report("propriety error", e, kNumericError);
    } catch (const lomax::DomainError& e) {
        return report("domain error", e, kNumericError);
    } catch (const lomax::StudyError& e) {
        return report("simulation error", e, kNumericError);
    } catch (const std::exception& e) {
        return report("error", e, kNumericError);
    }
    return 0;
}
