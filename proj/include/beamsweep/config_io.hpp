#ifndef BEAMSWEEP_CONFIG_IO_HPP
#define BEAMSWEEP_CONFIG_IO_HPP

///
/// \file config_io.hpp
///
/// Flat `key = value` scenario files, CSV number formatting and atomic file
/// output.
///
/// Recognized keys:
///
///   pa_dbm | pa_watt          transmit power (exactly one of the two)
///   noise_dbm | noise_watt    warden noise power (exactly one of the two)
///   theta_t                   beamspace width, (0, 2]
///   n_antennas                array size
///   l_total                   total observed symbols
///   d_aw                      distance [m]
///   path_exp                  optional, default 2
///   carrier_hz                optional, default 2.4e9
///
/// `#` starts a comment. Unknown and repeated keys are rejected.
///

#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "beamsweep/core.hpp"

namespace beamsweep
{

/// Malformed configuration text. `line()` is 0 for command-line overrides.
class ParseError : public std::runtime_error
{
public:
    ParseError(std::string source, int line, std::string key, const std::string& what)
        : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : std::string()) +
                             (key.empty() ? std::string() : " [" + key + "]") + ": " + what),
          line_(line), key_(std::move(key))
    {
    }

    int line() const noexcept { return line_; }
    const std::string& key() const noexcept { return key_; }

private:
    int line_;
    std::string key_;
};

namespace detail
{

inline std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

struct RawEntry
{
    std::string value;
    std::string source;
    int line = 0;
};

inline const std::vector<std::string_view>& known_keys()
{
    static const std::vector<std::string_view> keys = {
        "pa_dbm", "pa_watt", "noise_dbm", "noise_watt", "theta_t",
        "n_antennas", "l_total", "d_aw", "path_exp", "carrier_hz"};
    return keys;
}

inline bool is_known(std::string_view key)
{
    for (auto k : known_keys())
        if (k == key)
            return true;
    return false;
}

// Splits "key=value"; throws ParseError naming `source`/`line`.
inline std::pair<std::string, std::string> split_pair(std::string_view text,
                                                      const std::string& source, int line)
{
    const auto eq = text.find('=');
    if (eq == std::string_view::npos)
        throw ParseError(source, line, "", "expected key=value, got '" + std::string(text) + "'");
    std::string key(trim(text.substr(0, eq)));
    std::string value(trim(text.substr(eq + 1)));
    if (key.empty())
        throw ParseError(source, line, "", "missing key before '='");
    if (!is_known(key))
        throw ParseError(source, line, key, "unknown key");
    if (value.empty())
        throw ParseError(source, line, key, "missing value");
    return {std::move(key), std::move(value)};
}

inline double to_double(const RawEntry& e, const std::string& key)
{
    double v         = 0.0;
    const char* end  = e.value.data() + e.value.size();
    auto [ptr, ec]   = std::from_chars(e.value.data(), end, v);
    if (ec != std::errc() || ptr != end)
        throw ParseError(e.source, e.line, key, "not a number: '" + e.value + "'");
    return v;
}

inline long to_long(const RawEntry& e, const std::string& key)
{
    long v          = 0;
    const char* end = e.value.data() + e.value.size();
    auto [ptr, ec]  = std::from_chars(e.value.data(), end, v);
    if (ec != std::errc() || ptr != end)
        throw ParseError(e.source, e.line, key, "not an integer: '" + e.value + "'");
    return v;
}

// A dBm key and its watt twin describe the same quantity.
inline std::string_view power_twin(std::string_view key)
{
    if (key == "pa_dbm")
        return "pa_watt";
    if (key == "pa_watt")
        return "pa_dbm";
    if (key == "noise_dbm")
        return "noise_watt";
    if (key == "noise_watt")
        return "noise_dbm";
    return {};
}

}  // namespace detail

/// Parses configuration text, then applies `overrides` (each "key=value",
/// replacing what the text set) and validates the result.
inline ScenarioConfig parse_config_text(std::string_view text, const std::string& source = "<config>",
                                        const std::vector<std::string>& overrides = {})
{
    std::map<std::string, detail::RawEntry> raw;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size())
    {
        const auto nl         = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        pos                   = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty())
            continue;

        auto [key, value] = detail::split_pair(line, source, line_no);
        if (raw.contains(key))
            throw ParseError(source, line_no, key, "duplicate key");
        if (const auto twin = detail::power_twin(key); !twin.empty() && raw.contains(std::string(twin)))
            throw ParseError(source, line_no, key, "conflicts with " + std::string(twin));
        raw[key] = {std::move(value), source, line_no};
    }

    for (const auto& ov : overrides)
    {
        auto [key, value] = detail::split_pair(ov, "--set", 0);
        if (const auto twin = detail::power_twin(key); !twin.empty())
            raw.erase(std::string(twin));
        raw[key] = {std::move(value), "--set", 0};
    }

    // numeric syntax is checked for every entry before required-key checks
    std::map<std::string, double> reals;
    std::map<std::string, long> integers;
    for (const auto& [key, entry] : raw)
    {
        if (key == "n_antennas" || key == "l_total")
            integers[key] = detail::to_long(entry, key);
        else
            reals[key] = detail::to_double(entry, key);
    }

    auto missing = [&](const std::string& key) {
        return ConfigError(key, source + ": missing required key '" + key + "'");
    };
    auto real = [&](const std::string& key) {
        auto it = reals.find(key);
        if (it == reals.end())
            throw missing(key);
        return it->second;
    };
    auto integer = [&](const std::string& key) {
        auto it = integers.find(key);
        if (it == integers.end())
            throw missing(key);
        return it->second;
    };
    auto power = [&](const std::string& dbm_key, const std::string& watt_key) {
        if (auto it = reals.find(watt_key); it != reals.end())
            return it->second;
        return dbm_to_watt(real(dbm_key));
    };

    ScenarioConfig cfg;
    cfg.pa_watt    = power("pa_dbm", "pa_watt");
    cfg.noise_watt = power("noise_dbm", "noise_watt");
    cfg.theta_t    = real("theta_t");
    cfg.n_antennas = integer("n_antennas");
    cfg.l_total    = integer("l_total");
    cfg.d_aw       = real("d_aw");
    if (auto it = reals.find("path_exp"); it != reals.end())
        cfg.path_exp = it->second;
    if (auto it = reals.find("carrier_hz"); it != reals.end())
        cfg.carrier_hz = it->second;

    validate(cfg);
    return cfg;
}

inline ScenarioConfig parse_config(const std::filesystem::path& path,
                                   const std::vector<std::string>& overrides = {})
{
    std::ifstream in(path);
    if (!in)
        throw ParseError(path.string(), 0, "", "cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path.string(), overrides);
}

//==============================================================================
// Output
//==============================================================================

/// Shortest decimal form with at most 17 significant digits; round-trips.
inline std::string format_double(double v)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, ptr);
}

/// Config echo using watt keys, so re-parsing gives an identical ScenarioConfig.
inline std::string dump_config(const ScenarioConfig& cfg)
{
    std::ostringstream out;
    out << "pa_watt = " << format_double(cfg.pa_watt) << '\n'
        << "noise_watt = " << format_double(cfg.noise_watt) << '\n'
        << "theta_t = " << format_double(cfg.theta_t) << '\n'
        << "n_antennas = " << cfg.n_antennas << '\n'
        << "l_total = " << cfg.l_total << '\n'
        << "d_aw = " << format_double(cfg.d_aw) << '\n'
        << "path_exp = " << format_double(cfg.path_exp) << '\n'
        << "carrier_hz = " << format_double(cfg.carrier_hz) << '\n';
    return out.str();
}

/// Writes `contents` to a sibling temp file and renames it over `path`.
inline void write_file_atomic(const std::filesystem::path& path, std::string_view contents)
{
    namespace fs = std::filesystem;
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot write " + tmp.string());
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out)
            throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, path);
}

}  // namespace beamsweep

#endif  // BEAMSWEEP_CONFIG_IO_HPP
