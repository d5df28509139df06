#ifndef BEAMSWEEP_ANALYSIS_HPP
#define BEAMSWEEP_ANALYSIS_HPP

///
/// \file analysis.hpp
///
/// Closed-form performance of the warden's optimal per-sector energy
/// detector. With L_s samples per sector and post-beamforming SNR phi, the
/// normalized statistic is Gamma(L_s, 1) under H0 and (1 + phi) Gamma(L_s, 1)
/// under H1, which gives
///
///   alpha = Q(L_s, L_s ln(1+phi)(1 + 1/phi))
///   beta  = P(L_s, L_s ln(1+phi) / phi)
///
/// The KL divergence between the two per-sector observation laws and the
/// Pinsker bound 1 - sqrt(D/2) <= alpha + beta are provided alongside.
///

#include <cmath>
#include <stdexcept>

#include "beamsweep/core.hpp"
#include "beamsweep/specfun.hpp"

namespace beamsweep
{

struct DetectionAnalysis
{
    double alpha      = 0.0;
    double beta       = 0.0;
    double xi         = 0.0;
    double kl_exact   = 0.0;
    double kl_approx  = 0.0;
    double pinsker_lb = 1.0;
    bool pinsker_vacuous = false;  // lower bound below zero
};

namespace detail
{

inline void check_detection_args(double l_s, double phi_w)
{
    if (!(std::isfinite(l_s) && l_s > 0.0))
        throw std::domain_error("per-sector sample count must be finite and > 0");
    if (!(std::isfinite(phi_w) && phi_w > 0.0))
        throw std::domain_error("SNR must be finite and > 0");
}

inline void check_kl_args(double l_s, double phi_w)
{
    if (!(std::isfinite(l_s) && l_s > 0.0))
        throw std::domain_error("per-sector sample count must be finite and > 0");
    if (!(std::isfinite(phi_w) && phi_w >= 0.0))
        throw std::domain_error("SNR must be finite and >= 0");
}

}  // namespace detail

inline double false_alarm(double l_s, double phi_w)
{
    detail::check_detection_args(l_s, phi_w);
    return specfun::reg_upper_gamma(l_s, l_s * normalized_false_alarm_threshold(phi_w));
}

inline double miss_detection(double l_s, double phi_w)
{
    detail::check_detection_args(l_s, phi_w);
    return specfun::reg_lower_gamma(l_s, l_s * normalized_miss_threshold(phi_w));
}

/// Detection error probability xi = alpha + beta.
inline double total_error(double l_s, double phi_w)
{
    return false_alarm(l_s, phi_w) + miss_detection(l_s, phi_w);
}

/// D(f0 || f1) = L_s [ln(1 + phi) - phi / (1 + phi)].
inline double kl_divergence_exact(double l_s, double phi_w)
{
    detail::check_kl_args(l_s, phi_w);
    return l_s * (std::log1p(phi_w) - phi_w / (1.0 + phi_w));
}

/// Small-SNR form of the divergence, ln(1 + x) replaced by x, in terms of the
/// scenario: 4 L_t (P rho)^2 M / [(sigma^2 theta)^2 + 2 P rho sigma^2 theta M].
inline double kl_divergence_approx(const ScenarioConfig& cfg, long m, double rho_aw)
{
    const double p   = cfg.pa_watt * rho_aw;
    const double st  = cfg.noise_watt * cfg.theta_t;
    const double md  = static_cast<double>(m);
    const double num = 4.0 * static_cast<double>(cfg.l_total) * p * p * md;
    return num / (st * st + 2.0 * p * st * md);
}

/// Same approximation in per-sector terms: L_s [phi - phi / (1 + phi)].
inline double kl_divergence_approx_snr(double l_s, double phi_w)
{
    detail::check_kl_args(l_s, phi_w);
    return l_s * phi_w * phi_w / (1.0 + phi_w);
}

/// 1 - sqrt(kl / 2). Negative results are returned unchanged.
inline double pinsker_lower_bound(double kl)
{
    if (!(kl >= 0.0))
        throw std::domain_error("KL divergence must be >= 0");
    return 1.0 - std::sqrt(kl / 2.0);
}

inline DetectionAnalysis analyze_point(double l_s, double phi_w)
{
    DetectionAnalysis out;
    out.alpha           = false_alarm(l_s, phi_w);
    out.beta            = miss_detection(l_s, phi_w);
    out.xi              = out.alpha + out.beta;
    out.kl_exact        = kl_divergence_exact(l_s, phi_w);
    out.kl_approx       = kl_divergence_approx_snr(l_s, phi_w);
    out.pinsker_lb      = pinsker_lower_bound(out.kl_exact);
    out.pinsker_vacuous = out.pinsker_lb < 0.0;
    return out;
}

/// Full analysis of sector count `m` for a scenario.
inline DetectionAnalysis analyze(const ScenarioConfig& cfg, long m)
{
    const SweepPlan plan  = make_sweep_plan(cfg, m);
    const LinkBudget link = make_link_budget(cfg, plan);
    DetectionAnalysis out = analyze_point(plan.l_sector, link.phi_w);
    out.kl_approx         = kl_divergence_approx(cfg, m, link.rho_aw);
    return out;
}

}  // namespace beamsweep

#endif  // BEAMSWEEP_ANALYSIS_HPP
