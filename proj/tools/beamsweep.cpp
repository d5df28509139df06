// beamsweep: detection-error analysis of a beam-sweeping array warden.
//
//   beamsweep <command> --config <path> --out <path> [--set key=value]...
//             [--trials N] [--seed S]
//
// Exit codes: 0 success, 1 validation/parse failure, 2 numerical
// convergence failure, 3 Monte Carlo validation failure.

#include <iostream>

#include <CLI11.hpp>

#include "beamsweep/cli.hpp"

int main(int argc, char** argv)
{
    using beamsweep::cli::RunSpec;

    CLI::App app{"Beam-sweeping detection error analysis"};
    app.require_subcommand(1);

    RunSpec spec;
    long trials        = 0;
    std::uint64_t seed = 0;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* cfg = sub->add_option("--config", spec.config_path, "scenario file (key = value)");
        if (needs_config)
            cfg->required();
        sub->add_option("--out", spec.output_path, "output CSV");
        sub->add_option("--set", spec.overrides, "override a config key, key=value")->allow_extra_args(false);
    };
    auto add_mc = [&](CLI::App* sub) {
        sub->add_option("--trials", trials, "Monte Carlo trials per hypothesis")->check(CLI::PositiveNumber);
        sub->add_option("--seed", seed, "Monte Carlo seed");
        sub->add_option("--workers", spec.workers, "worker threads (0: all cores)");
    };

    auto* analyze = app.add_subcommand("analyze", "closed-form analysis at one sector count");
    add_common(analyze, true);
    analyze->add_option("--m", spec.sectors, "sector count M (default 1)")->expected(1);
    analyze->add_option("--dump-config", spec.dump_config_path, "echo the parsed config to a file");

    auto* sweep = app.add_subcommand("sweep-m", "detection error for every M in [1, M_max]");
    add_common(sweep, true);
    sweep->get_option("--out")->required();

    auto* optimize = app.add_subcommand("optimize", "sweep plus the minimizing M");
    add_common(optimize, true);
    optimize->get_option("--out")->required();

    auto* validate = app.add_subcommand("validate", "Monte Carlo check of the closed forms");
    add_common(validate, false);
    validate->get_option("--out")->required();
    add_mc(validate);
    validate->add_option("--m", spec.sectors, "sector counts to check (default: all)");
    validate->add_option("--ls", spec.l_s, "check a single point: samples per sector");
    validate->add_option("--phi", spec.phi_w, "check a single point: SNR");

    auto* repro = app.add_subcommand("repro", "preset sweeps, one CSV per curve");
    repro->add_option("preset", spec.preset, "fig2 or fig3")->required();
    repro->add_option("--out", spec.output_path, "output directory")->required();
    repro->add_option("--values", spec.values, "values of the varied parameter");
    repro->add_option("--set", spec.overrides, "override a preset key, key=value")->allow_extra_args(false);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : beamsweep::cli::exit_invalid;
    }

    spec.command = app.get_subcommands().front()->get_name();
    if (validate->count("--trials") > 0)
        spec.mc_trials = trials;
    if (validate->count("--seed") > 0)
        spec.seed = seed;

    return beamsweep::cli::run(spec, std::cout, std::cerr);
}
