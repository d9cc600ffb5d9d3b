#ifndef WMT_PROFILE_HPP
#define WMT_PROFILE_HPP

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "wmt/constants.hpp"
#include "wmt/errors.hpp"

namespace wmt {

namespace detail {

inline double pl_interpolate(const std::vector<double>& grid, const std::vector<double>& values,
                             double x) {
    if (x <= grid.front()) return values.front();
    if (x >= grid.back()) return values.back();
    const auto it = std::upper_bound(grid.begin(), grid.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - grid.begin()) - 1;
    const double t = (x - grid[i]) / (grid[i + 1] - grid[i]);
    return values[i] + t * (values[i + 1] - values[i]);
}

inline void check_grid(const std::vector<double>& grid, const std::vector<double>& values,
                       const char* kind) {
    if (grid.size() < 2 || grid.size() != values.size())
        throw DomainError(std::string(kind) + ": need >= 2 knots with matching values");
    if (grid.front() != 0.0) throw DomainError(std::string(kind) + ": grid must start at 0");
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        if (!(grid[i] < grid[i + 1]))
            throw DomainError(std::string(kind) + ": grid must be strictly increasing");
    for (double v : values)
        if (!std::isfinite(v) || v < 0.0)
            throw DomainError(std::string(kind) + ": values must be finite and nonnegative");
}

inline std::string shortest_repr(double x) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view sv, const char* what) {
    double x = 0.0;
    auto res = std::from_chars(sv.data(), sv.data() + sv.size(), x);
    if (res.ec != std::errc{} || res.ptr != sv.data() + sv.size())
        throw DomainError(std::string("profile parse: bad number for ") + what);
    return x;
}

} // namespace detail

/// Radial function u(ρ) on [0, R] in ball coordinates, piecewise linear on its grid,
/// compactly supported: u(R) = 0.
struct RadialProfile {
    std::vector<double> grid;   // 0 = ρ_0 < ... < ρ_k = R
    std::vector<double> values; // u(ρ_i) >= 0, values.back() == 0

    double R() const { return grid.back(); }

    double value_at(double rho) const {
        if (rho >= grid.back()) return 0.0;
        return detail::pl_interpolate(grid, values, rho);
    }

    void validate() const {
        detail::check_grid(grid, values, "RadialProfile");
        if (values.back() != 0.0) throw DomainError("RadialProfile: u(R) = 0 required");
    }
};

/// Function f(s) on [0, S] in half-line coordinates with f(0) = 0; constant extension
/// f(S) beyond S, flagged exact when has_plateau is set.
struct HalfLineProfile {
    std::vector<double> grid;   // 0 = s_0 < ... < s_k = S
    std::vector<double> values; // f(s_i) >= 0, values.front() == 0
    bool has_plateau = false;

    double S() const { return grid.back(); }
    double plateau_value() const { return values.back(); }

    double value_at(double s) const {
        if (s >= grid.back()) return values.back();
        return detail::pl_interpolate(grid, values, s);
    }

    void validate() const {
        detail::check_grid(grid, values, "HalfLineProfile");
        if (values.front() != 0.0) throw DomainError("HalfLineProfile: f(0) = 0 required");
    }
};

// ---------------------------------------------------------------------------
// Ball <-> half-line change of variables:  s = (2+beta) ln(R/ρ),  v = T u.
// ---------------------------------------------------------------------------

/// Transform to half-line coordinates, sampling v(s) = T u(R e^{-s/(2+beta)}) exactly.
/// Interior ball knots map knot-for-knot (reversed); each cell is additionally sampled
/// `refine`-fold so the piecewise-linear image tracks the curved pullback; the innermost
/// ball cell becomes an exponentially converging head that is cut at negligible
/// remaining variation and capped with a plateau.
inline HalfLineProfile to_halfline(const RadialProfile& u, const WeightParams& p,
                                   const ConstantsBundle& c, int refine = 8) {
    u.validate();
    p.validate();
    if (refine < 1) refine = 1;
    const double R = u.R();
    const double q = 2.0 + p.beta;

    std::vector<double> sgrid;
    // image knots of ρ_k = R down to ρ_1, each cell refined uniformly in s
    for (std::size_t i = u.grid.size() - 1; i >= 1; --i) {
        const double s_lo = q * std::log(R / u.grid[i]);
        const double s_hi = q * std::log(R / u.grid[i - 1]); // +inf for i == 1 (ρ_0 = 0)
        sgrid.push_back(s_lo);
        if (i > 1) {
            for (int j = 1; j < refine; ++j)
                sgrid.push_back(s_lo + (s_hi - s_lo) * j / refine);
        }
    }
    // head of the innermost cell: march until u(ρ(s)) is flat at double precision
    {
        const double s_start = sgrid.back();
        const double h = q * std::log(2.0) / std::max(1, refine / 2);
        const int octaves = 48; // ρ shrinks by 2^-48: u-variation below double resolution
        for (int j = 1; j <= octaves * std::max(1, refine / 2); ++j) sgrid.push_back(s_start + h * j);
    }

    HalfLineProfile v;
    v.grid = std::move(sgrid);
    v.values.reserve(v.grid.size());
    for (double s : v.grid) v.values.push_back(c.T * u.value_at(R * std::exp(-s / q)));
    v.values.front() = 0.0; // u(R) = 0 by invariant; pin against roundoff
    v.has_plateau = true;
    v.validate();
    return v;
}

/// Inverse transform onto the ball of radius R: u(ρ) = v((2+beta) ln(R/ρ)) / T.
/// The constant extension of v maps to the knot ρ = 0.
inline RadialProfile from_halfline(const HalfLineProfile& v, const WeightParams& p,
                                   const ConstantsBundle& c, double R) {
    v.validate();
    p.validate();
    if (!(R > 0.0)) throw DomainError("from_halfline: R > 0 required");
    const double q = 2.0 + p.beta;

    RadialProfile u;
    u.grid.reserve(v.grid.size() + 1);
    u.values.reserve(v.grid.size() + 1);
    u.grid.push_back(0.0);
    u.values.push_back(v.plateau_value() / c.T);
    for (std::size_t j = v.grid.size(); j-- > 0;) {
        const double rho = R * std::exp(-v.grid[j] / q);
        if (rho <= u.grid.back()) continue; // collapsed by underflow; plateau knot covers it
        u.grid.push_back(rho);
        u.values.push_back(v.values[j] / c.T);
    }
    u.values.back() = 0.0; // v(0) = 0 by invariant
    u.validate();
    return u;
}

// ---------------------------------------------------------------------------
// Monotone rearrangement (radial case).
// ---------------------------------------------------------------------------

namespace detail {

/// Weighted measure of [0, ρ]: ∫_0^ρ r^{1+beta} dr.
inline double radial_measure(double rho, double beta) {
    return std::pow(rho, 2.0 + beta) / (2.0 + beta);
}

/// Measure of the level set {u > lambda} w.r.t. ρ^{1+beta} dρ, exact for PL u.
inline double level_set_measure(const RadialProfile& u, double lambda, double beta) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < u.grid.size(); ++i) {
        const double a = u.grid[i], b = u.grid[i + 1];
        const double ua = u.values[i], ub = u.values[i + 1];
        if (ua <= lambda && ub <= lambda) continue;
        if (ua > lambda && ub > lambda) {
            total += radial_measure(b, beta) - radial_measure(a, beta);
            continue;
        }
        const double cross = a + (lambda - ua) * (b - a) / (ub - ua);
        if (ua > lambda)
            total += radial_measure(cross, beta) - radial_measure(a, beta);
        else
            total += radial_measure(b, beta) - radial_measure(cross, beta);
    }
    return total;
}

} // namespace detail

/// Decreasing rearrangement of a radial profile, equimeasurable w.r.t. the measure
/// ρ^{1+beta} dρ.  The distribution function is inverted monotonically onto the
/// profile's own grid; ties between equal values merge into plateaus.
inline RadialProfile rearrange_decreasing(const RadialProfile& u, const WeightParams& p) {
    u.validate();
    p.validate();
    const double beta = p.beta;
    const double vmax = *std::max_element(u.values.begin(), u.values.end());

    RadialProfile out;
    out.grid = u.grid;
    out.values.assign(u.grid.size(), 0.0);
    if (vmax == 0.0) return out;

    for (std::size_t i = 0; i < out.grid.size(); ++i) {
        const double target = detail::radial_measure(out.grid[i], beta);
        // generalized inverse: smallest lambda with mu(lambda) <= target
        double lo = 0.0, hi = vmax;
        if (detail::level_set_measure(u, 0.0, beta) <= target) {
            out.values[i] = 0.0;
            continue;
        }
        for (int iter = 0; iter < 100; ++iter) {
            const double mid = 0.5 * (lo + hi);
            if (detail::level_set_measure(u, mid, beta) <= target)
                hi = mid;
            else
                lo = mid;
            if (hi - lo < 1e-15 * vmax) break;
        }
        out.values[i] = hi;
    }
    out.values.back() = 0.0;
    // enforce monotonicity against roundoff at merged levels
    for (std::size_t i = 1; i < out.values.size(); ++i)
        out.values[i] = std::min(out.values[i], out.values[i - 1]);
    out.validate();
    return out;
}

// ---------------------------------------------------------------------------
// Named constructions.
// ---------------------------------------------------------------------------

/// Moser profile in half-line coordinates: f_n(s) = min(s n^{-1/(2+alpha)}, n^{(1+alpha)/(2+alpha)}).
/// Two knots and a plateau; its (2+alpha)-energy is exactly 1.
inline HalfLineProfile moser_halfline(int n, const WeightParams& p) {
    p.validate();
    if (n < 1) throw DomainError("moser_halfline: n >= 1 required");
    HalfLineProfile f;
    f.grid = {0.0, static_cast<double>(n)};
    f.values = {0.0, std::pow(static_cast<double>(n), (1.0 + p.alpha) / (2.0 + p.alpha))};
    f.has_plateau = true;
    return f;
}

/// Moser profile in ball coordinates: a plateau of height c_alpha^{-1/(2+alpha)}
/// (n/(2+beta))^{1/b_alpha} inside radius e^{-n/(2+beta)}, then a logarithmic ramp down
/// to the unit sphere.  The ramp is sampled on a geometric grid (uniform in the half-line
/// coordinate); `ramp_cells` = 0 picks a density that keeps the piecewise-linear energy
/// within ~2e-7 of the exact value 1.
inline RadialProfile moser_ball(int n, const WeightParams& p, const ConstantsBundle& c,
                                int ramp_cells = 0) {
    p.validate();
    if (n < 1) throw DomainError("moser_ball: n >= 1 required");
    const double q = 2.0 + p.beta;
    const double rho_n = std::exp(-n / q);
    const double plateau =
        std::pow(c.c_alpha, -1.0 / (2.0 + p.alpha)) * std::pow(n / q, 1.0 / c.b_alpha);
    const double ramp_coef = std::pow(c.c_alpha, -1.0 / (2.0 + p.alpha)) *
                             std::pow(q / n, 1.0 - 1.0 / c.b_alpha);

    if (ramp_cells <= 0) {
        // chord-vs-curve energy defect per cell ~ t^2/12 with t the log-ratio per cell
        const double t = std::sqrt(12.0 * 2e-7);
        ramp_cells = static_cast<int>(std::ceil((n / q) / t));
    }

    RadialProfile u;
    u.grid.reserve(static_cast<std::size_t>(ramp_cells) + 2);
    u.values.reserve(static_cast<std::size_t>(ramp_cells) + 2);
    u.grid.push_back(0.0);
    u.values.push_back(plateau);
    for (int j = 0; j <= ramp_cells; ++j) {
        const double s = n - static_cast<double>(n) * j / ramp_cells; // n -> 0
        const double rho = std::exp(-s / q);
        u.grid.push_back(rho);
        u.values.push_back(j == 0 ? plateau : ramp_coef * std::log(1.0 / rho));
    }
    u.values.back() = 0.0;
    u.validate();
    return u;
}

/// The piecewise test profile of the strict-exceedance argument:
/// phi0(s) = f(s)^{2(1+alpha)/(2+alpha)} with f = (s/2, sqrt(s-1), e) on
/// ([0,2], [2,e^2+1], [e^2+1,inf)).  Knots are placed uniformly in the VALUE of
/// phi0 on each piece, which keeps the piecewise-linear (2+alpha)-norm within
/// ~1e-6 of the closed form for any alpha > -1.
inline HalfLineProfile carleson_chang_test(double alpha, int cells_per_piece = 4000) {
    if (!(alpha > -1.0)) throw DomainError("carleson_chang_test: alpha > -1 required");
    const double power = 2.0 * (1.0 + alpha) / (2.0 + alpha); // phi0 = f^power
    const double half_power = 0.5 * power;                    // exponent of (s-1) on piece 2
    const int n = std::max(8, cells_per_piece);

    HalfLineProfile f;
    f.grid.reserve(2 * static_cast<std::size_t>(n) + 2);
    f.values.reserve(2 * static_cast<std::size_t>(n) + 2);

    // piece 1: phi0(s) = (s/2)^power climbs 0 -> 1 on [0, 2]
    for (int j = 0; j <= n; ++j) {
        const double v = static_cast<double>(j) / n;
        f.grid.push_back(2.0 * std::pow(v, 1.0 / power));
        f.values.push_back(v);
    }
    // piece 2: phi0(s) = (s-1)^{power/2} climbs 1 -> e^power on [2, e^2+1]
    const double top = std::exp(power);
    for (int j = 1; j <= n; ++j) {
        const double v = 1.0 + (top - 1.0) * static_cast<double>(j) / n;
        f.grid.push_back(1.0 + std::pow(v, 1.0 / half_power));
        f.values.push_back(v);
    }
    f.grid.back() = std::exp(2.0) + 1.0;
    f.values.back() = top;
    f.has_plateau = true;
    f.validate();
    return f;
}

// ---------------------------------------------------------------------------
// Serialization: one header line, then "knot value" rows, shortest decimal repr.
// ---------------------------------------------------------------------------

inline void write_profile(std::ostream& os, const std::vector<double>& grid,
                          const std::vector<double>& values, bool ball, bool plateau,
                          const WeightParams& p) {
    os << "wmt-profile " << (ball ? "ball" : "halfline") << ' ' << (ball ? "R=" : "S=")
       << detail::shortest_repr(grid.back()) << " alpha=" << detail::shortest_repr(p.alpha)
       << " beta=" << detail::shortest_repr(p.beta);
    if (p.sigma) os << " sigma=" << detail::shortest_repr(*p.sigma);
    if (!ball && plateau) os << " plateau=1";
    os << '\n';
    for (std::size_t i = 0; i < grid.size(); ++i)
        os << detail::shortest_repr(grid[i]) << ' ' << detail::shortest_repr(values[i]) << '\n';
}

inline void write_profile(std::ostream& os, const RadialProfile& u, const WeightParams& p) {
    write_profile(os, u.grid, u.values, true, false, p);
}

inline void write_profile(std::ostream& os, const HalfLineProfile& f, const WeightParams& p) {
    write_profile(os, f.grid, f.values, false, f.has_plateau, p);
}

struct StoredProfile {
    bool is_ball = true;
    RadialProfile ball;
    HalfLineProfile halfline;
    WeightParams params;
};

inline StoredProfile read_profile(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw DomainError("profile parse: empty stream");
    std::istringstream header(line);
    std::string magic, coord;
    header >> magic >> coord;
    if (magic != "wmt-profile" || (coord != "ball" && coord != "halfline"))
        throw DomainError("profile parse: bad header");

    StoredProfile out;
    out.is_ball = (coord == "ball");
    bool plateau = false;
    std::string kv;
    while (header >> kv) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw DomainError("profile parse: bad header field " + kv);
        const std::string key = kv.substr(0, eq);
        const std::string val = kv.substr(eq + 1);
        if (key == "alpha")
            out.params.alpha = detail::parse_double(val, "alpha");
        else if (key == "beta")
            out.params.beta = detail::parse_double(val, "beta");
        else if (key == "sigma")
            out.params.sigma = detail::parse_double(val, "sigma");
        else if (key == "plateau")
            plateau = (val == "1");
        else if (key != "R" && key != "S")
            throw DomainError("profile parse: unknown header field " + key);
    }

    std::vector<double> grid, values;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto sp = line.find(' ');
        if (sp == std::string::npos) throw DomainError("profile parse: bad row");
        grid.push_back(detail::parse_double(std::string_view(line).substr(0, sp), "knot"));
        values.push_back(detail::parse_double(std::string_view(line).substr(sp + 1), "value"));
    }
    if (out.is_ball) {
        out.ball.grid = std::move(grid);
        out.ball.values = std::move(values);
        out.ball.validate();
    } else {
        out.halfline.grid = std::move(grid);
        out.halfline.values = std::move(values);
        out.halfline.has_plateau = plateau;
        out.halfline.validate();
    }
    return out;
}

} // namespace wmt

#endif
