#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "lambdajc/config.hpp"
#include "lambdajc/runner.hpp"

namespace {

struct SubArgs {
    std::string config_path;
    std::string out_dir = ".";
    int threads = 0;
    std::vector<std::string> overrides;
};

void add_common_flags(CLI::App* sub, SubArgs& args) {
    sub->add_option("--config", args.config_path, "experiment config file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", args.out_dir, "output directory (default: current)");
    sub->add_option("--threads", args.threads, "worker threads (default: hardware)");
    sub->add_option("--override", args.overrides,
                    "config override, key=value or section.key=value (repeatable)");
}

int run_subcommand(lambdajc::cli::Experiment experiment, const SubArgs& args) {
    using namespace lambdajc;
    toml::Table table = toml::parse_file(args.config_path);
    for (const std::string& assignment : args.overrides)
        cli::apply_override(table, assignment);
    cli::ExperimentConfig config = cli::parse_config(table);
    if (config.experiment != experiment)
        throw cli::ConfigError({"config declares experiment '" + to_string(config.experiment) +
                                "' but the '" + to_string(experiment) +
                                "' subcommand was invoked"});
    cli::RunOptions options;
    options.out_dir = args.out_dir;
    options.threads = args.threads > 0
                          ? args.threads
                          : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    return cli::run(config, options);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lambda-atom + two-mode cavity dynamics: EIT spectra and entanglement series"};
    app.require_subcommand(1);

    SubArgs evolve_args, eit_args, kappa_args, validate_args;
    CLI::App* evolve = app.add_subcommand("evolve", "time series of field and atom observables");
    add_common_flags(evolve, evolve_args);
    CLI::App* eit = app.add_subcommand("eit", "probe spectrum versus detuning at the collapse instant");
    add_common_flags(eit, eit_args);
    CLI::App* kappa = app.add_subcommand("kappa-sweep", "entropy series across coupling deformations");
    add_common_flags(kappa, kappa_args);
    CLI::App* validate = app.add_subcommand("validate", "closed form versus brute-force propagator");
    add_common_flags(validate, validate_args);

    CLI11_PARSE(app, argc, argv);

    try {
        using lambdajc::cli::Experiment;
        if (evolve->parsed()) return run_subcommand(Experiment::Evolve, evolve_args);
        if (eit->parsed()) return run_subcommand(Experiment::Eit, eit_args);
        if (kappa->parsed()) return run_subcommand(Experiment::KappaSweep, kappa_args);
        if (validate->parsed()) return run_subcommand(Experiment::Validate, validate_args);
    } catch (const lambdajc::cli::ConfigError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
