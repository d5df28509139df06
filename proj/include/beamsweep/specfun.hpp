#ifndef BEAMSWEEP_SPECFUN_HPP
#define BEAMSWEEP_SPECFUN_HPP

///
/// \file specfun.hpp
///
/// Regularized incomplete gamma functions for real shape a > 0.
///
///   P(a, x) = gamma(a, x) / Gamma(a),   Q(a, x) = 1 - P(a, x)
///
/// For x < a + 1 the power series of P converges quickly; otherwise the
/// continued fraction of Q is used (modified Lentz). Both share the
/// prefactor x^a e^{-x} / Gamma(a), evaluated in log space. For a >= 10 the
/// prefactor is assembled from Stirling's series and log1p(t) - t so that
/// the large terms a ln x and ln Gamma(a) never cancel numerically.
///

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace beamsweep
{

/// Raised when an iterative expansion does not reach its tolerance within
/// the iteration cap.
class ConvergenceError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

namespace specfun
{

inline constexpr double tolerance    = 1e-15;
inline constexpr long max_iterations = 1'000'000;

/// ln Gamma(a) for a > 0.
inline double log_gamma(double a)
{
    if (!(std::isfinite(a) && a > 0.0))
        throw std::domain_error("log_gamma: argument must be finite and > 0");
    return std::lgamma(a);
}

namespace detail
{

// log1p(t) - t without cancellation near t = 0.
inline double log1pmx(double t)
{
    if (std::fabs(t) > 0.5)
        return std::log1p(t) - t;
    // -t^2/2 + t^3/3 - t^4/4 + ...
    double power = t * t;
    double sum   = 0.0;
    for (int k = 2; k < 200; ++k)
    {
        const double term = ((k % 2 == 0) ? -power : power) / k;
        sum += term;
        if (std::fabs(term) <= std::fabs(sum) * 1e-17)
            break;
        power *= t;
    }
    return sum;
}

// ln Gamma(a) - [(a - 1/2) ln a - a + ln(2 pi)/2], valid for a >= 10.
inline double stirling_correction(double a)
{
    const double r  = 1.0 / a;
    const double r2 = r * r;
    return r *
           (1.0 / 12.0 -
            r2 * (1.0 / 360.0 -
                  r2 * (1.0 / 1260.0 -
                        r2 * (1.0 / 1680.0 -
                              r2 * (1.0 / 1188.0 - r2 * (691.0 / 360360.0 - r2 / 156.0))))));
}

// ln[x^a e^{-x} / Gamma(a)] for x > 0.
inline double log_prefactor(double a, double x)
{
    if (a < 10.0)
        return a * std::log(x) - x - std::lgamma(a);
    const double t = (x - a) / a;
    return a * log1pmx(t) + 0.5 * std::log(a) - 0.5 * std::log(2.0 * std::numbers::pi) -
           stirling_correction(a);
}

// P(a, x) by its power series; intended for x < a + 1.
inline double lower_series(double a, double x)
{
    double term = 1.0;
    double sum  = 1.0;
    for (long n = 1; n <= max_iterations; ++n)
    {
        term *= x / (a + static_cast<double>(n));
        sum += term;
        if (term <= sum * tolerance)
            return std::exp(log_prefactor(a, x)) / a * sum;
    }
    throw ConvergenceError("incomplete gamma series did not converge for a=" +
                           std::to_string(a) + ", x=" + std::to_string(x));
}

// Q(a, x) by its continued fraction; intended for x >= a + 1.
inline double upper_continued_fraction(double a, double x)
{
    constexpr double tiny = 1e-300;
    double b              = x + 1.0 - a;
    double c              = 1.0 / tiny;
    double d              = 1.0 / b;
    double h              = d;
    for (long i = 1; i <= max_iterations; ++i)
    {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny)
            d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny)
            c = tiny;
        d                = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) <= tolerance)
            return std::exp(log_prefactor(a, x)) * h;
    }
    throw ConvergenceError("incomplete gamma continued fraction did not converge for a=" +
                           std::to_string(a) + ", x=" + std::to_string(x));
}

inline void check_domain(double a, double x)
{
    if (!(std::isfinite(a) && a > 0.0))
        throw std::domain_error("incomplete gamma: shape must be finite and > 0");
    if (!(std::isfinite(x) && x >= 0.0))
        throw std::domain_error("incomplete gamma: argument must be finite and >= 0");
}

}  // namespace detail

/// Regularized lower incomplete gamma P(a, x).
inline double reg_lower_gamma(double a, double x)
{
    detail::check_domain(a, x);
    if (x == 0.0)
        return 0.0;
    if (x < a + 1.0)
        return detail::lower_series(a, x);
    return 1.0 - detail::upper_continued_fraction(a, x);
}

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), accurate in
/// relative terms deep in the upper tail.
inline double reg_upper_gamma(double a, double x)
{
    detail::check_domain(a, x);
    if (x == 0.0)
        return 1.0;
    if (x < a + 1.0)
        return 1.0 - detail::lower_series(a, x);
    return detail::upper_continued_fraction(a, x);
}

/// One evaluation of P(a, x) together with its arguments.
struct GammaEval
{
    double shape = 0.0;
    double arg   = 0.0;
    double value = 0.0;
};

inline GammaEval evaluate_lower(double a, double x) { return {a, x, reg_lower_gamma(a, x)}; }

}  // namespace specfun
}  // namespace beamsweep

#endif  // BEAMSWEEP_SPECFUN_HPP
