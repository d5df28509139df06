#ifndef BEAMSWEEP_CLI_HPP
#define BEAMSWEEP_CLI_HPP

///
/// \file cli.hpp
///
/// Command implementations behind the `beamsweep` tool. `run()` never
/// throws; it maps failures onto the documented exit codes.
///

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "beamsweep/analysis.hpp"
#include "beamsweep/config_io.hpp"
#include "beamsweep/core.hpp"
#include "beamsweep/montecarlo.hpp"
#include "beamsweep/optimizer.hpp"
#include "beamsweep/presets.hpp"
#include "beamsweep/specfun.hpp"

namespace beamsweep::cli
{

enum ExitCode : int
{
    exit_ok          = 0,
    exit_invalid     = 1,  // parse or validation failure
    exit_convergence = 2,  // special function did not converge
    exit_mc_failed   = 3,  // Monte Carlo disagrees with the closed form
};

struct RunSpec
{
    std::string command;             // analyze | sweep-m | optimize | validate | repro
    std::string config_path;         // analyze, sweep-m, optimize, validate (config mode)
    std::string output_path;         // file; a directory for repro
    std::vector<std::string> overrides;
    std::optional<long> mc_trials;
    std::optional<std::uint64_t> seed;

    std::vector<long> sectors;       // analyze: first entry; validate: subset of M
    std::optional<double> l_s;       // validate a single (l_s, phi_w) point
    std::optional<double> phi_w;
    std::string preset;              // repro: fig2 | fig3
    std::vector<std::string> values; // repro: values of the varied key
    std::string dump_config_path;    // analyze --dump-config
    unsigned workers = 0;
};

inline constexpr long default_trials          = 100'000;
inline constexpr std::uint64_t default_seed   = 1;
inline constexpr std::string_view curve_header = "m,l_sector,phi_w,alpha,beta,xi,kl_exact,pinsker_lb";

//==============================================================================
// CSV rendering
//==============================================================================

inline std::string curve_csv(const SweepCurve& curve)
{
    std::ostringstream out;
    out << curve_header << '\n';
    for (const auto& e : curve.entries)
    {
        out << e.m << ',' << format_double(e.l_sector) << ',' << format_double(e.phi_w) << ','
            << format_double(e.alpha) << ',' << format_double(e.beta) << ',' << format_double(e.xi)
            << ',' << format_double(e.kl_exact) << ',' << format_double(e.pinsker_lb) << '\n';
    }
    return out.str();
}

inline std::string analysis_csv(const ScenarioConfig& cfg, long m)
{
    const SweepPlan plan          = make_sweep_plan(cfg, m);
    const LinkBudget link         = make_link_budget(cfg, plan);
    const DetectionAnalysis det   = analyze(cfg, m);
    std::ostringstream out;
    out << "m,m_max,l_sector,array_gain,rho_aw,phi_w,eta,alpha,beta,xi,kl_exact,kl_approx,"
           "pinsker_lb,pinsker_vacuous\n";
    out << m << ',' << plan.m_max << ',' << format_double(plan.l_sector) << ','
        << format_double(plan.array_gain) << ',' << format_double(link.rho_aw) << ','
        << format_double(link.phi_w) << ',' << format_double(link.eta) << ','
        << format_double(det.alpha) << ',' << format_double(det.beta) << ','
        << format_double(det.xi) << ',' << format_double(det.kl_exact) << ','
        << format_double(det.kl_approx) << ',' << format_double(det.pinsker_lb) << ','
        << (det.pinsker_vacuous ? 1 : 0) << '\n';
    return out.str();
}

inline constexpr std::string_view validate_header =
    "m,l_sector,l_sector_mc,phi_w,alpha,beta,xi,alpha_hat,beta_hat,xi_hat,"
    "ci_halfwidth_alpha,ci_halfwidth_beta,trials,seed,attempts,pass";

inline void append_validate_row(std::ostringstream& out, long m, double l_sector, const CellCheck& c)
{
    out << m << ',' << format_double(l_sector) << ',' << c.l_s << ',' << format_double(c.phi_w) << ','
        << format_double(c.alpha) << ',' << format_double(c.beta) << ','
        << format_double(c.alpha + c.beta) << ',' << format_double(c.estimate.alpha_hat) << ','
        << format_double(c.estimate.beta_hat) << ',' << format_double(c.estimate.xi_hat) << ','
        << format_double(c.estimate.ci_halfwidth_alpha) << ','
        << format_double(c.estimate.ci_halfwidth_beta) << ',' << c.estimate.trials << ','
        << c.seed_used << ',' << c.attempts << ',' << (c.pass ? 1 : 0) << '\n';
}

//==============================================================================
// Commands
//==============================================================================

namespace detail
{

inline void require(bool ok, const std::string& what)
{
    if (!ok)
        throw std::invalid_argument(what);
}

inline ScenarioConfig load(const RunSpec& spec)
{
    require(!spec.config_path.empty(), spec.command + ": --config is required");
    return parse_config(spec.config_path, spec.overrides);
}

inline McConfig mc_config(const RunSpec& spec)
{
    McConfig mc;
    mc.trials  = spec.mc_trials.value_or(default_trials);
    mc.seed    = spec.seed.value_or(default_seed);
    mc.workers = spec.workers;
    require(mc.trials >= 1, "--trials must be >= 1");
    return mc;
}

inline int cmd_analyze(const RunSpec& spec, std::ostream& log)
{
    const ScenarioConfig cfg = load(spec);
    if (!spec.dump_config_path.empty())
        write_file_atomic(spec.dump_config_path, dump_config(cfg));
    if (spec.output_path.empty())
    {
        require(!spec.dump_config_path.empty(), "analyze: --out is required");
        return exit_ok;
    }
    const long m = spec.sectors.empty() ? 1 : spec.sectors.front();
    write_file_atomic(spec.output_path, analysis_csv(cfg, m));
    log << "analyze: M=" << m << " written to " << spec.output_path << '\n';
    return exit_ok;
}

inline int cmd_sweep(const RunSpec& spec, std::ostream& log, bool summary)
{
    require(!spec.output_path.empty(), spec.command + ": --out is required");
    const ScenarioConfig cfg = load(spec);
    const SweepCurve curve   = sweep_sectors(cfg);
    std::string text         = curve_csv(curve);
    if (summary)
        text += "# m_star=" + std::to_string(curve.m_star) + ",xi_star=" + format_double(curve.xi_star) + '\n';
    write_file_atomic(spec.output_path, text);
    log << spec.command << ": " << curve.entries.size() << " rows, m_star=" << curve.m_star
        << " xi_star=" << format_double(curve.xi_star) << '\n';
    return exit_ok;
}

inline int cmd_validate(const RunSpec& spec, std::ostream& log)
{
    require(!spec.output_path.empty(), "validate: --out is required");
    const McConfig mc = mc_config(spec);

    std::ostringstream out;
    out << validate_header << '\n';
    bool all_pass = true;
    long floored  = 0;

    if (spec.l_s || spec.phi_w)
    {
        require(spec.l_s && spec.phi_w, "validate: --ls and --phi must be given together");
        const double l_s = *spec.l_s;
        require(l_s >= 1.0 && std::isfinite(l_s), "validate: --ls must be >= 1");
        const auto l_int = static_cast<long>(std::floor(l_s));
        floored += (static_cast<double>(l_int) != l_s) ? 1 : 0;
        const CellCheck c = validate_cell(l_int, *spec.phi_w, mc);
        append_validate_row(out, 0, l_s, c);
        all_pass = c.pass;
    }
    else
    {
        const ScenarioConfig cfg = load(spec);
        std::vector<long> ms     = spec.sectors;
        if (ms.empty())
        {
            // every M that leaves at least one sample per sector
            const long last = std::min(max_sectors(cfg), cfg.l_total);
            for (long m = 1; m <= last; ++m)
                ms.push_back(m);
        }
        for (long m : ms)
        {
            const SweepPlan plan  = make_sweep_plan(cfg, m);
            const LinkBudget link = make_link_budget(cfg, plan);
            const long l_int      = cfg.l_total / m;
            require(l_int >= 1, "validate: M=" + std::to_string(m) + " leaves no whole sample per sector");
            floored += plan.exact_split(cfg.l_total) ? 0 : 1;
            const CellCheck c = validate_cell(l_int, link.phi_w, mc);
            append_validate_row(out, m, plan.l_sector, c);
            all_pass = all_pass && c.pass;
        }
    }

    write_file_atomic(spec.output_path, out.str());
    if (floored > 0)
        log << "validate: " << floored
            << " point(s) had non-integer samples per sector; simulated and compared at the floor\n";
    log << "validate: " << (all_pass ? "PASS" : "FAIL") << '\n';
    return all_pass ? exit_ok : exit_mc_failed;
}

inline int cmd_repro(const RunSpec& spec, std::ostream& log)
{
    namespace fs = std::filesystem;
    require(!spec.output_path.empty(), "repro: --out <directory> is required");
    const auto preset = presets::find(spec.preset);
    require(preset.has_value(), "repro: unknown preset '" + spec.preset + "' (expected fig2 or fig3)");

    const auto& values = spec.values.empty() ? preset->default_values : spec.values;
    fs::create_directories(spec.output_path);
    for (const auto& value : values)
    {
        std::vector<std::string> overrides = spec.overrides;
        overrides.push_back(preset->varied_key + "=" + value);
        const ScenarioConfig cfg = parse_config_text(preset->text, preset->name, overrides);
        const SweepCurve curve   = sweep_sectors(cfg);
        const fs::path file      = fs::path(spec.output_path) /
                              (preset->name + "_" + preset->varied_key + "_" + value + ".csv");
        write_file_atomic(file, curve_csv(curve));
        log << "repro " << preset->name << ": " << preset->varied_key << '=' << value
            << " m_star=" << curve.m_star << " -> " << file.string() << '\n';
    }
    return exit_ok;
}

}  // namespace detail

inline int run(const RunSpec& spec, std::ostream& log, std::ostream& err)
{
    try
    {
        if (spec.command == "analyze")
            return detail::cmd_analyze(spec, log);
        if (spec.command == "sweep-m")
            return detail::cmd_sweep(spec, log, false);
        if (spec.command == "optimize")
            return detail::cmd_sweep(spec, log, true);
        if (spec.command == "validate")
            return detail::cmd_validate(spec, log);
        if (spec.command == "repro")
            return detail::cmd_repro(spec, log);
        err << "unknown command '" << spec.command << "'\n";
        return exit_invalid;
    }
    catch (const ConvergenceError& e)
    {
        err << "error: " << e.what() << '\n';
        return exit_convergence;
    }
    catch (const std::exception& e)
    {
        err << "error: " << e.what() << '\n';
        return exit_invalid;
    }
}

}  // namespace beamsweep::cli

#endif  // BEAMSWEEP_CLI_HPP
