#ifndef WMT_CONSTANTS_HPP
#define WMT_CONSTANTS_HPP

#include <cmath>
#include <limits>
#include <optional>

#include "wmt/errors.hpp"
#include "wmt/quadrature.hpp"
#include "wmt/special.hpp"

namespace wmt {

/// The exponent pair (alpha, beta) of the energy weight t^alpha and measure weight
/// t^beta, plus the optional splitting parameter sigma.
struct WeightParams {
    double alpha = 0.0;
    double beta = 0.0;
    std::optional<double> sigma;

    void validate() const {
        if (!(alpha > -1.0)) throw DomainError("WeightParams: alpha > -1 required");
        if (!(beta > -1.0)) throw DomainError("WeightParams: beta > -1 required");
        if (sigma && !(*sigma > 0.0)) throw DomainError("WeightParams: sigma > 0 required");
    }
};

/// Angular weight mass  ∫_0^π sin^a θ dθ  by weighted quadrature.
/// The endpoint singularity for a < 0 is absorbed into the θ^a weight via
/// sin θ = (sin θ / θ) · θ, leaving a smooth factor.
inline double angular_mass(double alpha, double tol = 1e-12) {
    if (!(alpha > -1.0)) throw DomainError("angular_mass: alpha > -1 required");
    QuadratureConfig cfg;
    cfg.abs_tol = tol;
    cfg.rel_tol = tol;
    auto smooth = [alpha](double theta) {
        if (theta == 0.0) return 1.0;
        return std::pow(std::sin(theta) / theta, alpha);
    };
    const auto est = integrate_radial(smooth, alpha, std::numbers::pi / 2.0, cfg);
    return 2.0 * est.value;
}

/// Every derived constant of the weighted theory for a fixed parameter pair.
struct ConstantsBundle {
    double c_alpha = 0.0;       // ∫ sin^alpha over [0, pi]
    double c_beta = 0.0;        // ∫ sin^beta over [0, pi]
    double b_alpha = 0.0;       // (2+alpha)/(1+alpha), the exponential power
    double b_beta = 0.0;        // (2+beta)/(1+beta)
    double a_sharp = 0.0;       // sharp exponent coefficient (2+beta) c_alpha^{1/(1+alpha)}
    double T = 0.0;             // amplitude scale of the ball <-> half-line transform
    double c_sigma_alpha = 0.0; // splitting constant; NaN when sigma absent
    double b_alpha_beta = 0.0;  // sharp coefficient of the swapped-exponent inequality, = T^{b_beta}
    double c_one = 1.0;         // Hoelder constant of the tail bound (user supplied)
    double c_zero = 1.0;        // normalization of J (user supplied or corpus estimate)
    double m_beta_ball = 0.0;   // weighted measure of the unit half ball, c_beta/(2+beta)
};

/// Splitting constant (1 - (1+sigma)^{-1-alpha})^{-1/(1+alpha)}; >= 1, decreasing in sigma.
inline double splitting_constant(double sigma, double alpha) {
    if (!(alpha > -1.0)) throw DomainError("splitting_constant: alpha > -1 required");
    if (!(sigma > -1.0)) throw DomainError("splitting_constant: sigma > -1 required");
    const double inner = 1.0 - std::pow(1.0 + sigma, -1.0 - alpha);
    if (!(inner > 0.0))
        throw DomainError("splitting_constant: sigma must be positive for a real value");
    return std::pow(inner, -1.0 / (1.0 + alpha));
}

/// Sharp coefficient for the variant inequality pairing the (2+alpha)-energy with the
/// (2+beta)/(1+beta)-power exponential; requires alpha < beta.  Equals T^{b_beta}.
inline double mixed_exponent_constant(const WeightParams& p, double c_alpha_value) {
    p.validate();
    if (!(p.alpha < p.beta)) throw DomainError("mixed_exponent_constant: alpha < beta required");
    const double e1 = (1.0 + p.alpha) * (2.0 + p.beta) / ((2.0 + p.alpha) * (1.0 + p.beta));
    const double e2 = (2.0 + p.beta) / ((2.0 + p.alpha) * (1.0 + p.beta));
    return std::pow(2.0 + p.beta, e1) * std::pow(c_alpha_value, e2);
}

inline double mixed_exponent_constant(const WeightParams& p) {
    return mixed_exponent_constant(p, angular_mass(p.alpha));
}

inline ConstantsBundle build_constants(const WeightParams& p, double c_zero = 1.0,
                                       double c_one = 1.0) {
    p.validate();
    if (!(c_zero > 0.0)) throw DomainError("build_constants: c_zero > 0 required");
    if (!(c_one > 0.0)) throw DomainError("build_constants: c_one > 0 required");

    ConstantsBundle c;
    c.c_alpha = angular_mass(p.alpha);
    c.c_beta = (p.beta == p.alpha) ? c.c_alpha : angular_mass(p.beta);
    c.b_alpha = (2.0 + p.alpha) / (1.0 + p.alpha);
    c.b_beta = (2.0 + p.beta) / (1.0 + p.beta);
    c.a_sharp = (2.0 + p.beta) * std::pow(c.c_alpha, 1.0 / (1.0 + p.alpha));
    c.T = (2.0 + p.beta) * std::pow(c.c_alpha / (2.0 + p.beta), 1.0 / (2.0 + p.alpha));
    c.c_sigma_alpha = p.sigma ? splitting_constant(*p.sigma, p.alpha)
                              : std::numeric_limits<double>::quiet_NaN();
    c.b_alpha_beta = std::pow(c.T, c.b_beta);
    c.c_one = c_one;
    c.c_zero = c_zero;
    c.m_beta_ball = c.c_beta / (2.0 + p.beta);
    return c;
}

/// The coefficient that results if the angular mass is doubled (a closed-form variant
/// seen in the literature); differs from a_sharp by the factor 2^{1/(1+alpha)}.
inline double a_sharp_doubled_mass(const WeightParams& p, const ConstantsBundle& c) {
    return (2.0 + p.beta) * std::pow(2.0 * c.c_alpha, 1.0 / (1.0 + p.alpha));
}

/// (2+alpha)-norm of the piecewise test profile used in the extremal-existence argument,
/// in closed form: ((1+alpha)/(2+alpha))^{(1+alpha)/(2+alpha)} * 2^{1/(2+alpha)}.
inline double test_profile_norm(double alpha) {
    if (!(alpha > -1.0)) throw DomainError("test_profile_norm: alpha > -1 required");
    const double r = (1.0 + alpha) / (2.0 + alpha);
    return std::pow(r, r) * std::pow(2.0, 1.0 / (2.0 + alpha));
}

/// Raw numbers behind the two hypotheses of the constrained extremal-existence result:
/// the test profile must fit inside the shrunken constraint ball, and the splitting
/// overhead must stay below one.  Reported, not asserted; the two conditions can be
/// jointly infeasible.
struct FeasibilityRecord {
    double gamma_phi0 = 0.0;   // closed-form norm of the test profile
    double bound = 0.0;        // 1 / c_{sigma,alpha}, the shrunken constraint radius
    double growth_ratio = 0.0; // (1 + sigma) / c_{sigma,alpha}, must be < 1
    bool feasible = false;
};

inline FeasibilityRecord extremal_feasibility(double alpha, double sigma) {
    if (!(alpha > -1.0)) throw DomainError("extremal_feasibility: alpha > -1 required");
    if (!(sigma > 0.0)) throw DomainError("extremal_feasibility: sigma > 0 required");
    FeasibilityRecord r;
    const double c = splitting_constant(sigma, alpha);
    r.gamma_phi0 = test_profile_norm(alpha);
    r.bound = 1.0 / c;
    r.growth_ratio = (1.0 + sigma) / c;
    r.feasible = (r.gamma_phi0 <= r.bound) && (r.growth_ratio < 1.0);
    return r;
}

} // namespace wmt

#endif
