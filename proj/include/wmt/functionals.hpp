#ifndef WMT_FUNCTIONALS_HPP
#define WMT_FUNCTIONALS_HPP

#include <cmath>
#include <limits>
#include <vector>

#include "wmt/constants.hpp"
#include "wmt/errors.hpp"
#include "wmt/profile.hpp"
#include "wmt/quadrature.hpp"

namespace wmt {

inline constexpr double kExpLimit = 700.0; // guard below the double e^x cutoff ~709

// ---------------------------------------------------------------------------
// Energies (cellwise closed form; no quadrature needed for piecewise-linear data).
// ---------------------------------------------------------------------------

/// Ball form: c_alpha Σ |slope|^{2+alpha} ∫ ρ^{1+alpha} dρ over cells.
inline double dirichlet_energy(const RadialProfile& u, const WeightParams& p,
                               const ConstantsBundle& c) {
    u.validate();
    double acc = 0.0;
    const double m = 2.0 + p.alpha;
    for (std::size_t i = 0; i + 1 < u.grid.size(); ++i) {
        const double a = u.grid[i], b = u.grid[i + 1];
        const double slope = (u.values[i + 1] - u.values[i]) / (b - a);
        if (slope == 0.0) continue;
        acc += std::pow(std::abs(slope), m) * (std::pow(b, m) - std::pow(a, m)) / m;
    }
    return c.c_alpha * acc;
}

/// Half-line form: Σ |slope|^{2+alpha} Δs, exact; the plateau contributes nothing.
inline double dirichlet_energy(const HalfLineProfile& f, const WeightParams& p) {
    f.validate();
    double acc = 0.0;
    const double m = 2.0 + p.alpha;
    for (std::size_t i = 0; i + 1 < f.grid.size(); ++i) {
        const double ds = f.grid[i + 1] - f.grid[i];
        const double slope = (f.values[i + 1] - f.values[i]) / ds;
        if (slope == 0.0) continue;
        acc += std::pow(std::abs(slope), m) * ds;
    }
    return acc;
}

/// (2+alpha)-norm of a half-line profile.
inline double halfline_norm(const HalfLineProfile& f, const WeightParams& p) {
    return std::pow(dirichlet_energy(f, p), 1.0 / (2.0 + p.alpha));
}

// ---------------------------------------------------------------------------
// Exponential functionals.
// ---------------------------------------------------------------------------

namespace detail {

inline void guard_exponent(double worst) {
    if (worst > kExpLimit) throw ExpOverflowError(worst);
}

} // namespace detail

/// ∫_0^∞ (e^{coef · f^{b_alpha}} - 1) e^{-s} ds for a piecewise-linear f with constant
/// extension; the tail beyond the last knot is the exact closed form (e^{coef F} - 1) e^{-S}.
inline IntegralEstimate exp_functional_halfline(const HalfLineProfile& f, double coef,
                                                const WeightParams& p,
                                                const QuadratureConfig& cfg) {
    f.validate();
    const double b_alpha = (2.0 + p.alpha) / (1.0 + p.alpha);
    double fmax = 0.0;
    for (double v : f.values) fmax = std::max(fmax, v);
    detail::guard_exponent(coef * std::pow(fmax, b_alpha));

    auto g = [&](double s) {
        const double val = f.value_at(s);
        return std::expm1(coef * std::pow(val, b_alpha));
    };
    IntegralEstimate est =
        integrate_halfline_exp(g, Truncation{f.S()}, cfg, std::span<const double>(f.grid));
    const double top = f.plateau_value();
    est.value += std::expm1(coef * std::pow(top, b_alpha)) * std::exp(-f.S());
    return est;
}

/// Half-line exponential functional I(f) = ∫ (e^{f^{b_alpha}} - 1) e^{-s} ds and the
/// shifted quantity I + 1 = ∫ e^{f^{b_alpha} - s} ds.
struct IFunctionalResult {
    double i_value = 0.0;
    double i_plus_1 = 0.0;
    double error = 0.0;
};

inline IFunctionalResult i_functional(const HalfLineProfile& f, const WeightParams& p,
                                      const QuadratureConfig& cfg = {}) {
    const IntegralEstimate est = exp_functional_halfline(f, 1.0, p, cfg);
    return {est.value, est.value + 1.0, est.error};
}

/// Ball-coordinate exponential integral c_beta ∫_0^R (e^{a u^{b_alpha}} - 1) ρ^{1+beta} dρ.
inline double mt_integral(const RadialProfile& u, double a, const WeightParams& p,
                          const ConstantsBundle& c, const QuadratureConfig& cfg = {}) {
    u.validate();
    if (!(a > 0.0)) throw DomainError("mt_integral: a > 0 required");
    const double b_alpha = c.b_alpha;
    double umax = 0.0;
    for (double v : u.values) umax = std::max(umax, v);
    detail::guard_exponent(a * std::pow(umax, b_alpha));

    auto g = [&](double rho) { return std::expm1(a * std::pow(u.value_at(rho), b_alpha)); };
    const auto est =
        integrate_radial(g, 1.0 + p.beta, u.R(), cfg, std::span<const double>(u.grid));
    return c.c_beta * est.value;
}

/// Same quantity through the half-line identity,
///   (c_beta R^{2+beta} / (2+beta)) ∫ (e^{(a/T^{b_alpha}) v^{b_alpha}} - 1) e^{-s} ds,
/// for cross-validation of the change of variables.
inline double mt_integral_via_halfline(const RadialProfile& u, double a, const WeightParams& p,
                                       const ConstantsBundle& c, const QuadratureConfig& cfg = {},
                                       int refine = 12) {
    const HalfLineProfile v = to_halfline(u, p, c, refine);
    const double coef = a / std::pow(c.T, c.b_alpha);
    const auto est = exp_functional_halfline(v, coef, p, cfg);
    return c.c_beta * std::pow(u.R(), 2.0 + p.beta) / (2.0 + p.beta) * est.value;
}

/// Exponential integral of the n-th Moser profile through the half-line identity,
/// where the two-piece representation is exact:
///   mt = (c_beta / (2+beta)) ∫ (e^{(a/a_sharp) f_n^{b_alpha}} - 1) e^{-s} ds.
inline double moser_mt_value(int n, double a, const WeightParams& p, const ConstantsBundle& c,
                             const QuadratureConfig& cfg = {}) {
    const HalfLineProfile fn = moser_halfline(n, p);
    const double coef = a / std::pow(c.T, c.b_alpha); // T^{b_alpha} = a_sharp
    const auto est = exp_functional_halfline(fn, coef, p, cfg);
    return c.c_beta / (2.0 + p.beta) * est.value;
}

/// Divergence lower bound (c_beta/(2+beta)) (e^{(a/a_sharp - 1) n} - e^{-n}).
inline double moser_lower_bound(int n, double a, const WeightParams& p,
                                const ConstantsBundle& c) {
    return c.c_beta / (2.0 + p.beta) *
           (std::exp((a / c.a_sharp - 1.0) * n) - std::exp(-static_cast<double>(n)));
}

// ---------------------------------------------------------------------------
// The normalized functional J.
// ---------------------------------------------------------------------------

struct FunctionalReport {
    double energy = 0.0;      // ∫ |∇u|^{2+alpha} t^alpha
    double mt_integral = 0.0; // ∫ (e^{a |u|^{b_alpha}} - 1) t^beta
    double j_value = 0.0;     // mt_integral / ((2+beta) c_zero m_beta_ball)
    double a_used = 0.0;
    double c_zero = 0.0;
    double m_beta_ball = 0.0;
};

inline FunctionalReport j_functional(const RadialProfile& u, const WeightParams& p,
                                     const ConstantsBundle& c, const QuadratureConfig& cfg = {}) {
    u.validate();
    if (u.R() > 1.0 + 1e-12) throw DomainError("j_functional: support must lie in the unit ball");
    FunctionalReport r;
    r.energy = dirichlet_energy(u, p, c);
    r.a_used = c.a_sharp;
    r.mt_integral = mt_integral(u, c.a_sharp, p, c, cfg);
    r.c_zero = c.c_zero;
    r.m_beta_ball = c.m_beta_ball;
    r.j_value = r.mt_integral / ((2.0 + p.beta) * c.c_zero * c.m_beta_ball);
    return r;
}

/// J of a half-line profile through the exact identity
/// J = c_beta / ((2+beta)^2 c_zero m_beta(B+)) * I(f).
inline double j_of_halfline(const HalfLineProfile& f, const WeightParams& p,
                            const ConstantsBundle& c, const QuadratureConfig& cfg = {}) {
    const double coef = c.c_beta / ((2.0 + p.beta) * (2.0 + p.beta) * c.c_zero * c.m_beta_ball);
    return coef * i_functional(f, p, cfg).i_value;
}

// ---------------------------------------------------------------------------
// Inequality checks.
// ---------------------------------------------------------------------------

struct OnofriRecord {
    double lhs = 0.0;
    double rhs = 0.0;
    double zeta = 0.0;
    bool holds = false;
};

/// Logarithmic (Onofri-type) inequality:
///   ln ∫ (e^u - zeta) t^beta  <=  ln((2+beta) c0 m_beta(supp u)) + cE ||u||^{2+alpha}
/// with cE = (a_sharp (2+alpha)/(1+alpha))^{-(1+alpha)} / (2+alpha) and
/// zeta = exp(cE ||u||^{2+alpha}).  A nonpositive logarithm argument makes the
/// inequality vacuous: lhs = -inf, holds = true.
inline OnofriRecord onofri_check(const RadialProfile& u, const WeightParams& p,
                                 const ConstantsBundle& c, const QuadratureConfig& cfg = {}) {
    u.validate();
    OnofriRecord r;
    const double energy = dirichlet_energy(u, p, c);
    const double cE = std::pow(c.a_sharp * c.b_alpha, -(1.0 + p.alpha)) / (2.0 + p.alpha);
    r.zeta = std::exp(cE * energy);

    auto g = [&](double rho) { return std::exp(u.value_at(rho)) - r.zeta; };
    const auto est =
        integrate_radial(g, 1.0 + p.beta, u.R(), cfg, std::span<const double>(u.grid));
    const double integral = c.c_beta * est.value;

    const double m_supp = c.c_beta * std::pow(u.R(), 2.0 + p.beta) / (2.0 + p.beta);
    r.rhs = std::log((2.0 + p.beta) * c.c_zero * m_supp) + cE * energy;
    if (integral <= 0.0) {
        r.lhs = -std::numeric_limits<double>::infinity();
        r.holds = true;
    } else {
        r.lhs = std::log(integral);
        r.holds = r.lhs <= r.rhs;
    }
    return r;
}

struct MixedExponentRecord {
    double lhs = 0.0;
    double rhs = 0.0;
    double condition_residual = 0.0;
    bool holds = false;
};

/// Swapped-exponent inequality on the ball of radius R0: the (2+alpha)-energy constraint
/// paired with the exponent b_beta = (2+beta)/(1+beta).  Requires alpha < beta, a
/// nonincreasing profile, a <= b_alpha_beta and energy <= 1; reports the residual of the
/// boundary normalization c_alpha^{1/(2+alpha)} (2+beta)^{(1+alpha)/(2+alpha)} u(R0) = 1.
inline MixedExponentRecord mixed_exponent_check(const RadialProfile& u, double a,
                                                const WeightParams& p, const ConstantsBundle& c,
                                                double R0, const QuadratureConfig& cfg = {}) {
    u.validate();
    if (!(p.alpha < p.beta)) throw DomainError("mixed_exponent_check: alpha < beta required");
    if (!(R0 > 0.0) || R0 > u.R() + 1e-12)
        throw DomainError("mixed_exponent_check: R0 must lie inside the support");
    for (std::size_t i = 1; i < u.values.size(); ++i)
        if (u.values[i] > u.values[i - 1] + 1e-12 * (1.0 + u.values[i - 1]))
            throw DomainError("mixed_exponent_check: profile must be nonincreasing");
    if (a > c.b_alpha_beta * (1.0 + 1e-12))
        throw DomainError("mixed_exponent_check: a <= b_alpha_beta required");
    if (dirichlet_energy(u, p, c) > 1.0 + 1e-9)
        throw DomainError("mixed_exponent_check: unit energy bound violated");

    const double b_beta = c.b_beta;
    double umax = 0.0;
    for (double v : u.values) umax = std::max(umax, v);
    detail::guard_exponent(a * std::pow(umax, b_beta));

    std::vector<double> breaks;
    breaks.push_back(0.0);
    for (double g : u.grid)
        if (g > 0.0 && g < R0) breaks.push_back(g);
    breaks.push_back(R0);

    auto g = [&](double rho) { return std::expm1(a * std::pow(u.value_at(rho), b_beta)); };
    const auto est = integrate_radial(g, 1.0 + p.beta, R0, cfg, breaks);

    MixedExponentRecord r;
    r.lhs = c.c_beta * est.value;
    r.rhs = c.c_zero * std::pow(R0, 2.0 + p.beta) * c.c_beta;
    r.condition_residual = std::pow(c.c_alpha, 1.0 / (2.0 + p.alpha)) *
                               std::pow(2.0 + p.beta, (1.0 + p.alpha) / (2.0 + p.alpha)) *
                               u.value_at(R0) -
                           1.0;
    r.holds = r.lhs <= r.rhs;
    return r;
}

// ---------------------------------------------------------------------------
// Euler-Lagrange residual of the mean-field equation (radial strong form).
// ---------------------------------------------------------------------------

struct ElResidual {
    double lambda_star = 0.0;
    double relative_residual = 0.0;
    std::vector<double> a_terms; // divergence side at interior knots
    std::vector<double> b_terms; // normalized source at interior knots
};

/// Least-squares comparison of the radially reduced divergence term
///   A(ρ) = -(c_alpha / (c_beta ρ^{1+beta})) d/dρ (ρ^{1+alpha} |u'|^alpha u')
/// against the normalized source
///   B(ρ) = u^{1/(1+alpha)} (e^{a_sharp u^{b_alpha}} - 1) / D
/// over a free multiplier; the angular weights separate only within the radial class,
/// so the residual is meaningful for radial profiles only.
inline ElResidual el_residual(const RadialProfile& u, const WeightParams& p,
                              const ConstantsBundle& c, const QuadratureConfig& cfg = {}) {
    u.validate();
    const std::size_t k = u.grid.size();
    if (k < 4) throw DomainError("el_residual: need at least 3 cells");
    for (std::size_t i = 1; i + 1 < k; ++i)
        if (!(u.values[i] > 0.0))
            throw DomainError("el_residual: u must be strictly positive in the interior");

    const double b_alpha = c.b_alpha;
    const double inv_1pa = 1.0 / (1.0 + p.alpha);
    double umax = 0.0;
    for (double v : u.values) umax = std::max(umax, v);
    detail::guard_exponent(c.a_sharp * std::pow(umax, b_alpha));

    auto dsrc = [&](double rho) {
        const double val = u.value_at(rho);
        return std::expm1(c.a_sharp * std::pow(val, b_alpha)) * std::pow(val, inv_1pa);
    };
    const double D =
        c.c_beta *
        integrate_radial(dsrc, 1.0 + p.beta, u.R(), cfg, std::span<const double>(u.grid)).value;

    // flux at cell midpoints; centered difference of the flux at interior knots
    std::vector<double> mid(k - 1), flux(k - 1);
    for (std::size_t i = 0; i + 1 < k; ++i) {
        mid[i] = 0.5 * (u.grid[i] + u.grid[i + 1]);
        const double slope = (u.values[i + 1] - u.values[i]) / (u.grid[i + 1] - u.grid[i]);
        flux[i] = std::pow(mid[i], 1.0 + p.alpha) * std::pow(std::abs(slope), p.alpha) * slope;
    }

    double ab = 0.0, bb = 0.0;
    std::vector<double> As(k - 2), Bs(k - 2);
    for (std::size_t i = 1; i + 1 < k; ++i) {
        const double dflux = (flux[i] - flux[i - 1]) / (mid[i] - mid[i - 1]);
        const double A = -(c.c_alpha / (c.c_beta * std::pow(u.grid[i], 1.0 + p.beta))) * dflux;
        const double B = std::pow(u.values[i], inv_1pa) *
                         std::expm1(c.a_sharp * std::pow(u.values[i], b_alpha)) / D;
        As[i - 1] = A;
        Bs[i - 1] = B;
        ab += A * B;
        bb += B * B;
    }
    ElResidual r;
    r.lambda_star = (bb > 0.0) ? ab / bb : 0.0;
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < As.size(); ++i) {
        const double d = As[i] - r.lambda_star * Bs[i];
        num += d * d;
        den += As[i] * As[i];
    }
    r.relative_residual = (den > 0.0) ? std::sqrt(num / den) : 0.0;
    r.a_terms = std::move(As);
    r.b_terms = std::move(Bs);
    return r;
}

} // namespace wmt

#endif
