#ifndef BEAMSWEEP_OPTIMIZER_HPP
#define BEAMSWEEP_OPTIMIZER_HPP

///
/// \file optimizer.hpp
///
/// Choice of the sector count M in [1, M_max] minimizing the detection error
/// probability. No unimodality is assumed; every M is evaluated.
///

#include <stdexcept>
#include <vector>

#include "beamsweep/analysis.hpp"
#include "beamsweep/core.hpp"

namespace beamsweep
{

struct SweepEntry
{
    long m            = 0;
    double l_sector   = 0.0;
    double phi_w      = 0.0;
    double alpha      = 0.0;
    double beta       = 0.0;
    double xi         = 0.0;
    double kl_exact   = 0.0;
    double kl_approx  = 0.0;
    double pinsker_lb = 0.0;
    bool exact_split  = true;  // M divides L_t
};

struct SweepCurve
{
    std::vector<SweepEntry> entries;  // m = 1 .. m_max, ascending
    long m_star    = 0;               // smallest m attaining xi_star
    double xi_star = 0.0;
};

inline SweepEntry evaluate_sector_count(const ScenarioConfig& cfg, long m)
{
    const SweepPlan plan           = make_sweep_plan(cfg, m);
    const LinkBudget link          = make_link_budget(cfg, plan);
    const DetectionAnalysis result = analyze_point(plan.l_sector, link.phi_w);

    SweepEntry e;
    e.m           = m;
    e.l_sector    = plan.l_sector;
    e.phi_w       = link.phi_w;
    e.alpha       = result.alpha;
    e.beta        = result.beta;
    e.xi          = result.xi;
    e.kl_exact    = result.kl_exact;
    e.kl_approx   = kl_divergence_approx(cfg, m, link.rho_aw);
    e.pinsker_lb  = result.pinsker_lb;
    e.exact_split = plan.exact_split(cfg.l_total);
    return e;
}

inline SweepCurve sweep_sectors(const ScenarioConfig& cfg)
{
    validate(cfg);
    const long m_max = max_sectors(cfg);
    if (m_max < 1)
        throw std::out_of_range("scenario admits no sector count (N * theta_t / 2 < 1)");

    SweepCurve curve;
    curve.entries.reserve(static_cast<std::size_t>(m_max));
    for (long m = 1; m <= m_max; ++m)
    {
        curve.entries.push_back(evaluate_sector_count(cfg, m));
        const SweepEntry& e = curve.entries.back();
        if (m == 1 || e.xi < curve.xi_star)
        {
            curve.m_star  = m;
            curve.xi_star = e.xi;
        }
    }
    return curve;
}

}  // namespace beamsweep

#endif  // BEAMSWEEP_OPTIMIZER_HPP
