#ifndef WMT_SPECIAL_HPP
#define WMT_SPECIAL_HPP

#include <cmath>
#include <numbers>

#include "wmt/errors.hpp"

namespace wmt {

/// Log-Gamma by the Lanczos approximation (g = 7, 9 coefficients).
/// Relative accuracy better than 1e-13 on [0.5, 20]; reflection handles x < 0.5.
inline double log_gamma(double x) {
    static constexpr double kCoeff[9] = {
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    };
    if (std::isnan(x)) return x;
    if (x < 0.5) {
        // Gamma(x) Gamma(1-x) = pi / sin(pi x)
        const double s = std::sin(std::numbers::pi * x);
        if (s == 0.0) throw DomainError("log_gamma: nonpositive integer argument");
        return std::log(std::numbers::pi / std::abs(s)) - log_gamma(1.0 - x);
    }
    const double z = x - 1.0;
    double acc = kCoeff[0];
    for (int i = 1; i < 9; ++i) acc += kCoeff[i] / (z + i);
    const double t = z + 7.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(acc);
}

/// Closed form for the angular weight mass: sqrt(pi) * Gamma((a+1)/2) / Gamma(a/2 + 1).
/// Valid for a > -1 where the integral of sin^a over [0, pi] converges.
inline double sin_power_mass_closed_form(double alpha) {
    if (!(alpha > -1.0)) throw DomainError("sin_power_mass: requires alpha > -1");
    return std::exp(0.5 * std::log(std::numbers::pi) + log_gamma(0.5 * (alpha + 1.0)) -
                    log_gamma(0.5 * alpha + 1.0));
}

} // namespace wmt

#endif
