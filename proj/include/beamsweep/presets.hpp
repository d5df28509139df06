#ifndef BEAMSWEEP_PRESETS_HPP
#define BEAMSWEEP_PRESETS_HPP

///
/// \file presets.hpp
///
/// Built-in scenarios reproducing the two published sector-count sweeps.
/// The texts mirror presets/fig2.cfg and presets/fig3.cfg.
///

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace beamsweep::presets
{

inline constexpr std::string_view fig2_text = R"(# Sector-count sweep with a large symbol budget.
# xi(M) is non-decreasing in M for this budget; repro varies noise_dbm.
pa_dbm = 30
noise_dbm = -50
theta_t = 1.0471975511965976   # pi/3
n_antennas = 128
l_total = 160
# 50 m rather than 100 m: see README, "Presets"
d_aw = 50
path_exp = 2
carrier_hz = 2.4e9
)";

inline constexpr std::string_view fig3_text = R"(# Sector-count sweep with a small symbol budget.
# xi(M) first decreases then increases in M; repro varies l_total.
pa_dbm = 10
noise_dbm = -50
theta_t = 1.0471975511965976   # pi/3
n_antennas = 128
l_total = 32
# 50 m rather than 100 m: see README, "Presets"
d_aw = 50
path_exp = 2
carrier_hz = 2.4e9
)";

/// A preset plus the parameter its curves are indexed by.
struct Preset
{
    std::string name;
    std::string_view text;
    std::string varied_key;
    std::vector<std::string> default_values;
};

inline std::optional<Preset> find(std::string_view name)
{
    if (name == "fig2")
        return Preset{"fig2", fig2_text, "noise_dbm", {"-50", "-60"}};
    if (name == "fig3")
        return Preset{"fig3", fig3_text, "l_total", {"32", "160"}};
    return std::nullopt;
}

}  // namespace beamsweep::presets

#endif  // BEAMSWEEP_PRESETS_HPP
