#ifndef WMT_QUADRATURE_HPP
#define WMT_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <span>
#include <variant>
#include <vector>

#include "wmt/errors.hpp"

namespace wmt {

struct QuadratureConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int nodes_per_cell = 16; // Gauss-Legendre order per grid cell

    enum class SMaxPolicy { fixed, adaptive_tail };
    SMaxPolicy s_max_policy = SMaxPolicy::adaptive_tail;
    double fixed_s_max = 80.0;

    int max_subdivisions = 20;

    void validate() const {
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
            throw DomainError("QuadratureConfig: tolerances must be positive");
        if (nodes_per_cell < 2) throw DomainError("QuadratureConfig: nodes_per_cell >= 2 required");
        if (max_subdivisions < 1) throw DomainError("QuadratureConfig: max_subdivisions >= 1 required");
    }
};

struct IntegralEstimate {
    double value = 0.0;
    double error = 0.0;      // accumulated local error estimate
    double tail_bound = 0.0; // certified bound on the truncated remainder (half-line only)
};

/// Nodes and weights on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Nodes by Newton iteration on the Legendre recurrence; cached per order.
inline const GaussLegendreRule& gauss_legendre(int n) {
    static std::map<int, GaussLegendreRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Chebyshev-like initial guess for the i-th root of P_n
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    auto [pos, unused] = cache.emplace(n, std::move(rule));
    return pos->second;
}

namespace detail {

template <class F>
double gl_cell(F& g, double a, double b, const GaussLegendreRule& rule) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double acc = 0.0;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j)
        acc += rule.weights[j] * g(mid + half * rule.nodes[j]);
    return acc * half;
}

// Bisect until the coarse/refined difference meets the cell's tolerance share.
template <class F>
void adaptive_cell(F& g, double a, double b, double cell_tol, int depth,
                   const GaussLegendreRule& rule, int max_depth, IntegralEstimate& out) {
    const double coarse = gl_cell(g, a, b, rule);
    const double mid = 0.5 * (a + b);
    const double fine = gl_cell(g, a, mid, rule) + gl_cell(g, mid, b, rule);
    const double diff = std::abs(fine - coarse);
    if (diff <= cell_tol || depth >= max_depth) {
        out.value += fine;
        out.error += diff;
        return;
    }
    adaptive_cell(g, a, mid, 0.5 * cell_tol, depth + 1, rule, max_depth, out);
    adaptive_cell(g, mid, b, 0.5 * cell_tol, depth + 1, rule, max_depth, out);
}

} // namespace detail

/// Integrate g over consecutive cells given by `breaks` (ascending), adaptively per cell.
template <class F>
IntegralEstimate integrate_cells(F&& g, std::span<const double> breaks, const QuadratureConfig& cfg) {
    cfg.validate();
    if (breaks.size() < 2) throw DomainError("integrate_cells: need at least one cell");
    const auto& rule = gauss_legendre(cfg.nodes_per_cell);

    // First pass for a magnitude estimate, second pass against the mixed tolerance.
    double coarse = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
        coarse += detail::gl_cell(g, breaks[i], breaks[i + 1], rule);
    const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(coarse));

    IntegralEstimate out;
    const std::size_t ncells = breaks.size() - 1;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
        detail::adaptive_cell(g, breaks[i], breaks[i + 1], tol / static_cast<double>(ncells), 0,
                              rule, cfg.max_subdivisions, out);
    if (out.error > 4.0 * std::max(tol, cfg.abs_tol))
        throw NumericError("integrate_cells: tolerance not met", out.value, out.error);
    return out;
}

/// Weighted radial integral  ∫_0^R g(ρ) ρ^w dρ  with w > -1.
/// The endpoint singularity (w < 0, or a merely integrable g like log) is handled by
/// geometric grading of the first cell; `breakpoints` lets callers align cells with the
/// kinks of piecewise integrands.
template <class F>
IntegralEstimate integrate_radial(F&& g, double weight_exponent, double R,
                                  const QuadratureConfig& cfg,
                                  std::span<const double> breakpoints = {}) {
    if (!(weight_exponent > -1.0))
        throw DomainError("integrate_radial: weight exponent must exceed -1");
    if (!(R > 0.0)) throw DomainError("integrate_radial: R must be positive");

    std::vector<double> breaks;
    if (breakpoints.empty()) {
        breaks = {0.0, R};
    } else {
        breaks.assign(breakpoints.begin(), breakpoints.end());
        if (breaks.front() != 0.0 || breaks.back() != R)
            throw DomainError("integrate_radial: breakpoints must span [0, R]");
    }

    // Geometric grading toward 0: ratio q per subcell, enough levels that the innermost
    // cell's weighted measure is negligible at double precision.
    const double q = 1.0 / 16.0;
    const double wp1 = weight_exponent + 1.0;
    int levels = static_cast<int>(std::ceil(13.0 / (wp1 * std::log10(1.0 / q))));
    levels = std::clamp(levels, 4, 400);
    const double b1 = breaks[1];
    std::vector<double> graded;
    graded.push_back(0.0);
    for (int k = levels; k >= 1; --k) graded.push_back(b1 * std::pow(q, k));
    for (std::size_t i = 1; i < breaks.size(); ++i) graded.push_back(breaks[i]);

    auto weighted = [&](double rho) { return g(rho) * std::pow(rho, weight_exponent); };
    return integrate_cells(weighted, graded, cfg);
}

/// Certified growth of the integrand of a half-line integral: |g(s)| <= scale * e^{kappa_b * s}
/// with kappa_b < 1, so the e^{-s} factor leaves a summable tail.
struct GrowthBound {
    double kappa_b;
    double scale = 1.0;
};

/// Explicit truncation point; the caller asserts g needs no tail beyond s_end.
struct Truncation {
    double s_end;
};

using TailControl = std::variant<GrowthBound, Truncation>;

/// ∫_0^∞ g(s) e^{-s} ds, truncated at a point where the certified remainder is below
/// abs_tol (or at the explicit truncation point).
template <class F>
IntegralEstimate integrate_halfline_exp(F&& g, const TailControl& tail, const QuadratureConfig& cfg,
                                        std::span<const double> breakpoints = {}) {
    cfg.validate();
    double s_end = 0.0;
    double tail_bound = 0.0;
    if (const auto* growth = std::get_if<GrowthBound>(&tail)) {
        if (!(growth->kappa_b < 1.0))
            throw DomainError("integrate_halfline_exp: growth exponent must be < 1");
        const double rate = 1.0 - growth->kappa_b;
        if (cfg.s_max_policy == QuadratureConfig::SMaxPolicy::fixed) {
            s_end = cfg.fixed_s_max;
        } else {
            // scale * e^{-rate S} / rate well below abs_tol
            s_end = std::log(std::max(growth->scale, 1e-300) / (0.01 * cfg.abs_tol * rate)) / rate;
            s_end = std::clamp(s_end, 1.0, 4000.0);
        }
        tail_bound = growth->scale * std::exp(-rate * s_end) / rate;
        if (tail_bound > 10.0 * std::max(cfg.abs_tol, 1e-300) &&
            cfg.s_max_policy == QuadratureConfig::SMaxPolicy::adaptive_tail)
            throw NumericError("integrate_halfline_exp: certified tail bound unachievable", 0.0,
                               tail_bound);
    } else {
        s_end = std::get<Truncation>(tail).s_end;
        if (!(s_end > 0.0)) throw DomainError("integrate_halfline_exp: truncation must be positive");
    }

    std::vector<double> breaks;
    breaks.push_back(0.0);
    for (double b : breakpoints)
        if (b > 0.0 && b < s_end) breaks.push_back(b);
    // keep cells at most ~4 wide so the e^{-s} factor is well resolved
    breaks.push_back(s_end);
    std::vector<double> refined;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        refined.push_back(breaks[i]);
        const double width = breaks[i + 1] - breaks[i];
        const int pieces = static_cast<int>(std::ceil(width / 4.0));
        for (int j = 1; j < pieces; ++j) refined.push_back(breaks[i] + width * j / pieces);
    }
    refined.push_back(s_end);

    auto damped = [&](double s) { return g(s) * std::exp(-s); };
    IntegralEstimate est = integrate_cells(damped, refined, cfg);
    est.tail_bound = tail_bound;
    est.error += tail_bound;
    return est;
}

} // namespace wmt

#endif
