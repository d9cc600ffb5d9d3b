#ifndef WMT_CORPUS_HPP
#define WMT_CORPUS_HPP

#include <cmath>
#include <random>
#include <vector>

#include "wmt/constants.hpp"
#include "wmt/functionals.hpp"
#include "wmt/profile.hpp"

namespace wmt {

/// Rescale a radial profile to the given weighted Dirichlet energy (exact by
/// (2+alpha)-homogeneity).
inline RadialProfile scale_to_energy(RadialProfile u, double target, const WeightParams& p,
                                     const ConstantsBundle& c) {
    const double e = dirichlet_energy(u, p, c);
    if (e > 0.0) {
        const double r = std::pow(target / e, 1.0 / (2.0 + p.alpha));
        for (double& v : u.values) v *= r;
    }
    return u;
}

inline HalfLineProfile scale_to_energy(HalfLineProfile f, double target, const WeightParams& p) {
    const double e = dirichlet_energy(f, p);
    if (e > 0.0) {
        const double r = std::pow(target / e, 1.0 / (2.0 + p.alpha));
        for (double& v : f.values) v *= r;
    }
    return f;
}

/// Seeded random radial profile on [0, R]: a mixture of cones, power bumps, two-bump
/// shapes, tapered random walks and truncated log ramps, on a fine uniform grid.
inline RadialProfile random_radial_profile(std::mt19937_64& rng, double R = 1.0,
                                           int knots = 200) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const int kind = static_cast<int>(uni(rng) * 5.0);
    RadialProfile u;
    u.grid.reserve(knots + 1);
    u.values.reserve(knots + 1);
    for (int i = 0; i <= knots; ++i) u.grid.push_back(R * i / knots);

    const double amp = 0.2 + 2.0 * uni(rng);
    switch (kind) {
        case 0: { // cone
            for (double rho : u.grid) u.values.push_back(amp * (1.0 - rho / R));
            break;
        }
        case 1: { // power bump
            const double a = 0.5 + 3.0 * uni(rng);
            const double b = 0.5 + 3.0 * uni(rng);
            for (double rho : u.grid)
                u.values.push_back(amp * std::pow(1.0 - std::pow(rho / R, a), b));
            break;
        }
        case 2: { // two bumps (generally non-monotone)
            const double m1 = 0.15 * R + 0.3 * R * uni(rng);
            const double m2 = 0.55 * R + 0.3 * R * uni(rng);
            const double w1 = 0.05 * R + 0.15 * R * uni(rng);
            const double w2 = 0.05 * R + 0.15 * R * uni(rng);
            const double a2 = amp * (0.3 + 0.7 * uni(rng));
            auto raw = [&](double rho) {
                const double d1 = (rho - m1) / w1, d2 = (rho - m2) / w2;
                return amp * std::exp(-d1 * d1) + a2 * std::exp(-d2 * d2);
            };
            const double edge = raw(R);
            for (double rho : u.grid) u.values.push_back(std::max(0.0, raw(rho) - edge));
            break;
        }
        case 3: { // tapered random walk
            std::normal_distribution<double> inc(0.0, 1.0);
            double level = 0.0;
            std::vector<double> walk;
            walk.reserve(u.grid.size());
            for (std::size_t i = 0; i < u.grid.size(); ++i) {
                level += inc(rng) / std::sqrt(static_cast<double>(knots));
                walk.push_back(std::abs(level));
            }
            for (std::size_t i = 0; i < u.grid.size(); ++i) {
                const double taper = 1.0 - u.grid[i] / R;
                u.values.push_back(amp * walk[i] * taper);
            }
            break;
        }
        default: { // truncated log ramp with plateau
            const double cut = 0.02 + 0.2 * uni(rng);
            for (double rho : u.grid) {
                const double val = std::log(R / std::max(rho, cut * R));
                u.values.push_back(amp * val);
            }
            break;
        }
    }
    u.values.back() = 0.0;
    return u;
}

/// Seeded random half-line profile with plateau: ramps, kinks and random walks with
/// nonnegative values and f(0) = 0.
inline HalfLineProfile random_halfline_profile(std::mt19937_64& rng, double S = 30.0,
                                               int knots = 150) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::normal_distribution<double> inc(0.0, 1.0);
    HalfLineProfile f;
    f.grid.reserve(knots + 1);
    f.values.reserve(knots + 1);
    for (int i = 0; i <= knots; ++i) f.grid.push_back(S * i / knots);

    const int kind = static_cast<int>(uni(rng) * 3.0);
    const double amp = 0.2 + 1.5 * uni(rng);
    if (kind == 0) { // capped ramp
        const double cap = 0.2 + 0.6 * uni(rng);
        for (double s : f.grid) f.values.push_back(amp * std::min(s / S, cap));
    } else if (kind == 1) { // concave climb
        const double pw = 0.3 + 0.6 * uni(rng);
        for (double s : f.grid) f.values.push_back(amp * std::pow(s / S, pw));
    } else { // nonnegative random walk pinned at 0
        double level = 0.0;
        for (std::size_t i = 0; i < f.grid.size(); ++i) {
            if (i > 0) level = std::abs(level + inc(rng) / std::sqrt(static_cast<double>(knots)));
            f.values.push_back(amp * level);
        }
    }
    f.values.front() = 0.0;
    f.has_plateau = true;
    return f;
}

/// Random member of the class {phi(0) = 0, ∫ phi'^2 <= delta0} (nonnegative, plateau).
inline HalfLineProfile random_quadratic_class_member(std::mt19937_64& rng, double delta0,
                                                     double S = 30.0, int knots = 120) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    HalfLineProfile f = random_halfline_profile(rng, S, knots);
    // scale so the quadratic energy lands strictly inside the class
    double e2 = 0.0;
    for (std::size_t i = 0; i + 1 < f.grid.size(); ++i) {
        const double ds = f.grid[i + 1] - f.grid[i];
        const double slope = (f.values[i + 1] - f.values[i]) / ds;
        e2 += slope * slope * ds;
    }
    if (e2 > 0.0) {
        const double target = delta0 * (0.2 + 0.8 * uni(rng));
        const double r = std::sqrt(target / e2);
        for (double& v : f.values) v *= r;
    }
    return f;
}

/// Built-in half-line shapes: the named constructions plus images of simple ball
/// profiles.  Used by the c_0 estimator and the inequality property suites.
inline std::vector<HalfLineProfile> builtin_halfline_corpus(const WeightParams& p,
                                                            const ConstantsBundle& c) {
    std::vector<HalfLineProfile> out;
    out.push_back(carleson_chang_test(p.alpha));
    for (int n : {2, 5, 10, 20}) out.push_back(moser_halfline(n, p));

    RadialProfile cone;
    cone.grid = {0.0, 0.5, 1.0};
    cone.values = {1.0, 0.5, 0.0};
    out.push_back(to_halfline(cone, p, c));

    RadialProfile bump;
    for (int i = 0; i <= 100; ++i) {
        const double rho = i / 100.0;
        bump.grid.push_back(rho);
        bump.values.push_back((1.0 - rho * rho) * (1.0 - rho * rho));
    }
    bump.values.back() = 0.0;
    out.push_back(to_halfline(bump, p, c));
    return out;
}

/// Empirical lower bound for the normalization c_0: the supremum of
/// (1/(2+beta)) ∫ (e^{|v|^{b_alpha}} - 1) e^{-s} ds over the unit-energy corpus.
inline double estimate_c0(const WeightParams& p, const ConstantsBundle& c,
                          const QuadratureConfig& cfg = {}) {
    double best = 0.0;
    for (const auto& f : builtin_halfline_corpus(p, c)) {
        const HalfLineProfile unit = scale_to_energy(f, 1.0, p);
        best = std::max(best, i_functional(unit, p, cfg).i_value / (2.0 + p.beta));
    }
    return best;
}

} // namespace wmt

#endif
