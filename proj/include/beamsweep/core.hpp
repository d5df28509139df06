#ifndef BEAMSWEEP_CORE_HPP
#define BEAMSWEEP_CORE_HPP

///
/// \file core.hpp
///
/// Scenario parameters, sector geometry of the beam sweep and the warden's
/// link budget (path loss, post-beamforming SNR, energy-detector threshold).
///

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace beamsweep
{

inline constexpr double speed_of_light = 3.0e8;  // [m/s]

/// Physical and system parameters of one detection scenario, in SI units.
struct ScenarioConfig
{
    double pa_watt    = 0.0;    // transmit power of the UAV
    double noise_watt = 0.0;    // noise variance at the warden
    double theta_t    = 0.0;    // suspicious beamspace width, (0, 2]
    long n_antennas   = 0;      // warden array size N
    long l_total      = 0;      // total observed symbols L_t
    double d_aw       = 0.0;    // UAV-warden distance [m]
    double path_exp   = 2.0;    // path loss exponent
    double carrier_hz = 2.4e9;  // carrier frequency

    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Thrown when a ScenarioConfig violates one of its invariants. `field()`
/// names the offending parameter.
class ConfigError : public std::invalid_argument
{
public:
    ConfigError(std::string field, const std::string& what)
        : std::invalid_argument(what), field_(std::move(field))
    {
    }

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

inline void validate(const ScenarioConfig& cfg)
{
    auto positive = [](const char* name, double v) {
        if (!(std::isfinite(v) && v > 0.0))
            throw ConfigError(name, std::string(name) + " must be finite and > 0");
    };
    positive("pa_watt", cfg.pa_watt);
    positive("noise_watt", cfg.noise_watt);
    positive("d_aw", cfg.d_aw);
    positive("carrier_hz", cfg.carrier_hz);
    if (!(std::isfinite(cfg.theta_t) && cfg.theta_t > 0.0 && cfg.theta_t <= 2.0))
        throw ConfigError("theta_t", "theta_t must lie in (0, 2]");
    if (!(std::isfinite(cfg.path_exp) && cfg.path_exp >= 1.0))
        throw ConfigError("path_exp", "path_exp must be >= 1");
    if (cfg.n_antennas < 1)
        throw ConfigError("n_antennas", "n_antennas must be >= 1");
    if (cfg.l_total < 1)
        throw ConfigError("l_total", "l_total must be >= 1");
}

inline double dbm_to_watt(double p_dbm) { return std::pow(10.0, (p_dbm - 30.0) / 10.0); }

inline double watt_to_dbm(double p_watt) { return 10.0 * std::log10(p_watt) + 30.0; }

//==============================================================================
// Sector geometry
//==============================================================================

/// Largest admissible sector count, floor(N * theta_t / 2).
inline long max_sectors(const ScenarioConfig& cfg)
{
    return static_cast<long>(std::floor(static_cast<double>(cfg.n_antennas) * cfg.theta_t / 2.0));
}

struct SweepPlan
{
    long m_sectors      = 1;
    double sector_width = 0.0;  // theta_t / M
    double l_sector     = 0.0;  // L_t / M, kept real-valued
    double array_gain   = 0.0;  // ||h_aw||^2 = 2 / sector_width
    long m_max          = 1;

    /// True when M divides L_t, i.e. the per-sector sample count is integral.
    bool exact_split(long l_total) const noexcept { return l_total % m_sectors == 0; }
};

/// Splits the suspicious range into `m` sectors. Throws std::out_of_range
/// unless 1 <= m <= max_sectors(cfg).
inline SweepPlan make_sweep_plan(const ScenarioConfig& cfg, long m)
{
    const long m_max = max_sectors(cfg);
    if (m < 1 || m > m_max)
        throw std::out_of_range("sector count " + std::to_string(m) + " outside [1, " +
                                std::to_string(m_max) + "]");
    SweepPlan plan;
    plan.m_sectors    = m;
    plan.m_max        = m_max;
    plan.sector_width = cfg.theta_t / static_cast<double>(m);
    plan.l_sector     = static_cast<double>(cfg.l_total) / static_cast<double>(m);
    plan.array_gain   = 2.0 * static_cast<double>(m) / cfg.theta_t;
    return plan;
}

//==============================================================================
// Link budget
//==============================================================================

/// Free-space style path loss [c / (4 pi f_c)]^2 * d^-m.
inline double path_loss(double carrier_hz, double distance, double exponent)
{
    const double omega = std::pow(speed_of_light / (4.0 * std::numbers::pi * carrier_hz), 2);
    return omega * std::pow(distance, -exponent);
}

/// ln(1 + phi) (1 + 1/phi): false-alarm threshold per sample, in units of
/// the noise power after beamforming. Tends to 1 as phi -> 0.
inline double normalized_false_alarm_threshold(double phi_w)
{
    if (phi_w == 0.0)
        return 1.0;
    return std::log1p(phi_w) * (1.0 + 1.0 / phi_w);
}

/// ln(1 + phi) / phi: the same threshold in units of the signal-plus-noise
/// power after beamforming. Tends to 1 as phi -> 0.
inline double normalized_miss_threshold(double phi_w)
{
    if (phi_w == 0.0)
        return 1.0;
    return std::log1p(phi_w) / phi_w;
}

struct LinkBudget
{
    double rho_aw = 0.0;  // path loss
    double phi_w  = 0.0;  // SNR at the warden after beamforming
    double eta    = 0.0;  // per-sample threshold of the energy statistic
};

inline LinkBudget make_link_budget(const ScenarioConfig& cfg, const SweepPlan& plan)
{
    LinkBudget lb;
    lb.rho_aw = path_loss(cfg.carrier_hz, cfg.d_aw, cfg.path_exp);
    lb.phi_w  = cfg.pa_watt * lb.rho_aw * plan.array_gain / cfg.noise_watt;
    // sigma^2/(P rho) + g = g (1 + 1/phi), so eta never divides by P rho.
    lb.eta = normalized_false_alarm_threshold(lb.phi_w) * plan.array_gain * cfg.noise_watt;
    return lb;
}

}  // namespace beamsweep

#endif  // BEAMSWEEP_CORE_HPP
