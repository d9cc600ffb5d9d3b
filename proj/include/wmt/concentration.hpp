#ifndef WMT_CONCENTRATION_HPP
#define WMT_CONCENTRATION_HPP

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "wmt/constants.hpp"
#include "wmt/errors.hpp"
#include "wmt/functionals.hpp"
#include "wmt/profile.hpp"

namespace wmt {

// ---------------------------------------------------------------------------
// Tail energy (the concentration diagnostic): gradient mass outside B_delta.
// ---------------------------------------------------------------------------

/// c_alpha ∫_delta^1 |u'|^{2+alpha} ρ^{1+alpha} dρ, exact cellwise for PL profiles.
inline double tail_energy(const RadialProfile& u, double delta, const WeightParams& p,
                          const ConstantsBundle& c) {
    u.validate();
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError("tail_energy: delta in (0,1) required");
    if (u.R() > 1.0 + 1e-12) throw DomainError("tail_energy: support must lie in the unit ball");
    const double m = 2.0 + p.alpha;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < u.grid.size(); ++i) {
        const double a = std::max(u.grid[i], delta);
        const double b = u.grid[i + 1];
        if (b <= a) continue;
        const double slope = (u.values[i + 1] - u.values[i]) / (u.grid[i + 1] - u.grid[i]);
        if (slope == 0.0) continue;
        acc += std::pow(std::abs(slope), m) * (std::pow(b, m) - std::pow(a, m)) / m;
    }
    return c.c_alpha * acc;
}

/// Half-line form of the same quantity: ∫_0^A |f'|^{2+alpha} ds with A = (2+beta) ln(1/delta),
/// exact for the two-piece Moser profiles.
inline double tail_energy(const HalfLineProfile& f, double delta, const WeightParams& p) {
    f.validate();
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError("tail_energy: delta in (0,1) required");
    const double A = (2.0 + p.beta) * std::log(1.0 / delta);
    const double m = 2.0 + p.alpha;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < f.grid.size(); ++i) {
        const double a = f.grid[i];
        const double b = std::min(f.grid[i + 1], A);
        if (b <= a) break;
        const double slope = (f.values[i + 1] - f.values[i]) / (f.grid[i + 1] - f.grid[i]);
        if (slope != 0.0) acc += std::pow(std::abs(slope), m) * (b - a);
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Closed-form bounds.
// ---------------------------------------------------------------------------

/// Exponential bound e^{c^2 delta0 / 4 + 1} dominating ∫ e^{c phi - t} dt over the
/// class {phi(0)=0, ∫ phi'^2 <= delta0}.
inline double carleson_chang_bound(double c, double delta0) {
    if (!(delta0 >= 0.0)) throw DomainError("carleson_chang_bound: delta0 >= 0 required");
    return std::exp(c * c * delta0 / 4.0 + 1.0);
}

/// Bound on the tail integral ∫_{c1^2(1+alpha)a/16}^∞ e^{phi^{b_alpha} - s} ds for
/// phi with (2+alpha)-norm <= delta, given phi_at = phi(c1 a / 4).
inline double tail_integral_bound(double phi_at, double a, double delta, double sigma,
                                  double alpha, double c_one) {
    if (!(alpha > -1.0)) throw DomainError("tail_integral_bound: alpha > -1 required");
    if (!(sigma > 0.0)) throw DomainError("tail_integral_bound: sigma > 0 required");
    if (!(c_one > 0.0)) throw DomainError("tail_integral_bound: c_one > 0 required");
    if (!(a > 0.0)) throw DomainError("tail_integral_bound: a > 0 required");
    if (!(phi_at >= 0.0)) throw DomainError("tail_integral_bound: phi value must be >= 0");
    const double room = 1.0 - (1.0 + sigma) * delta;
    if (!(room > 0.0)) throw DomainError("tail_integral_bound: 1 - (1+sigma) delta > 0 required");
    const double cs = splitting_constant(sigma, alpha);
    const double b_alpha = (2.0 + alpha) / (1.0 + alpha);
    const double expo = cs * (c_one * (1.0 + alpha) / 4.0) * std::pow(phi_at, b_alpha) -
                        c_one * c_one * (1.0 + alpha) * a / 16.0 +
                        (c_one * delta / room) * phi_at / 4.0 + 1.0;
    return std::exp(expo) / room;
}

/// Limit caps along concentrating sequences: 1 + e for the shifted half-line functional
/// and its J-scale counterpart c_beta (1+e) / ((2+beta)^2 c_0 m_beta(B+)).
struct ConcentrationCeiling {
    double ceiling_I_plus_1 = 0.0;
    double ceiling_J = 0.0;
};

inline ConcentrationCeiling concentration_ceiling(const WeightParams& p,
                                                  const ConstantsBundle& c) {
    p.validate();
    ConcentrationCeiling out;
    out.ceiling_I_plus_1 = 1.0 + std::exp(1.0);
    out.ceiling_J = c.c_beta * out.ceiling_I_plus_1 /
                    ((2.0 + p.beta) * (2.0 + p.beta) * c.c_zero * c.m_beta_ball);
    return out;
}

// ---------------------------------------------------------------------------
// Crossing point: first root of  c f^{b_alpha}(a) - a + 2 ln a  on [1, inf).
// ---------------------------------------------------------------------------

inline std::optional<double> crossing_point(const HalfLineProfile& f, double c,
                                            const WeightParams& p) {
    f.validate();
    if (!(c >= 1.0)) throw DomainError("crossing_point: c >= 1 required");
    const double energy = dirichlet_energy(f, p);
    if (c * std::pow(energy, 1.0 / (2.0 + p.alpha)) > 1.0 + 1e-12)
        throw DomainError("crossing_point: admissibility c * energy^{1/(2+alpha)} <= 1 violated");

    const double b_alpha = (2.0 + p.alpha) / (1.0 + p.alpha);
    auto g = [&](double s) { return c * std::pow(f.value_at(s), b_alpha) - s + 2.0 * std::log(s); };

    // scan points: knots in [1, S], subdivided to catch within-cell crossings, then the
    // constant-extension region where g is eventually monotone decreasing
    std::vector<double> scan;
    scan.push_back(1.0);
    for (double s : f.grid)
        if (s > 1.0) scan.push_back(s);
    const double plateau_g_const = c * std::pow(f.plateau_value(), b_alpha);
    {
        // beyond S: g(s) = const - s + 2 ln s; decreasing for s > 2 and -> -inf
        double s = std::max(f.S(), 2.0);
        const double reach = std::max(4.0 * (plateau_g_const + 4.0), s + 4.0);
        while (s < reach) {
            s += 1.0;
            scan.push_back(s);
        }
    }
    std::vector<double> fine;
    for (std::size_t i = 0; i + 1 < scan.size(); ++i) {
        fine.push_back(scan[i]);
        const double w = scan[i + 1] - scan[i];
        const int pieces = static_cast<int>(std::ceil(w / 0.05));
        for (int j = 1; j < pieces; ++j) fine.push_back(scan[i] + w * j / pieces);
    }
    fine.push_back(scan.back());

    double prev_s = fine.front();
    double prev_g = g(prev_s);
    if (prev_g == 0.0) return prev_s;
    for (std::size_t i = 1; i < fine.size(); ++i) {
        const double cur_s = fine[i];
        const double cur_g = g(cur_s);
        if (cur_g == 0.0) return cur_s;
        if ((prev_g < 0.0) != (cur_g < 0.0)) {
            double lo = prev_s, hi = cur_s;
            for (int iter = 0; iter < 200; ++iter) {
                const double mid = 0.5 * (lo + hi);
                const double gm = g(mid);
                if (gm == 0.0) return mid;
                if ((g(lo) < 0.0) != (gm < 0.0))
                    hi = mid;
                else
                    lo = mid;
                if (hi - lo < 2e-14 * hi) break;
            }
            return 0.5 * (lo + hi);
        }
        prev_s = cur_s;
        prev_g = cur_g;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Dichotomy classification.
// ---------------------------------------------------------------------------

struct DichotomyConfig {
    // Chosen so the canonical two-piece concentrating family with n >= 30 classifies as
    // concentrating at delta = 0.1 (final tail (2+beta) ln 10 / n ~ 0.15 at beta = 0).
    double concentration_tol = 0.2;
    double j_tol = 1e-4;
    std::vector<double> deltas = {0.5, 0.25, 0.1};
    QuadratureConfig quad;
};

struct DichotomyReport {
    enum class Verdict { convergent, concentrating, inconclusive };
    Verdict verdict = Verdict::inconclusive;
    std::vector<double> deltas;
    std::vector<std::vector<double>> tail_energies; // [delta index][member]
    std::vector<double> j_trajectory;
    std::vector<double> i_plus_1_trajectory;
    double j_limit_candidate = 0.0;
    double ceiling = 0.0;          // J-scale cap for concentrating sequences
    double ceiling_i_plus_1 = 0.0; // shifted-functional cap, 1 + e
    bool alpha_hypothesis_flag = false; // ceiling derivation assumes alpha > 0
    // crossing-point diagnostics of the last member (needs sigma and admissible energy)
    std::optional<double> crossing_a;
    std::optional<double> delta_m;
    std::optional<double> k_m;

    static const char* verdict_name(Verdict v) {
        switch (v) {
            case Verdict::convergent: return "convergent";
            case Verdict::concentrating: return "concentrating";
            default: return "inconclusive";
        }
    }
};

inline DichotomyReport classify_dichotomy(const std::vector<HalfLineProfile>& seq,
                                          const WeightParams& p, const ConstantsBundle& c,
                                          const DichotomyConfig& cfg = {}) {
    if (seq.empty()) throw DomainError("classify_dichotomy: empty sequence");
    p.validate();

    DichotomyReport rep;
    rep.deltas = cfg.deltas;
    rep.alpha_hypothesis_flag = (p.alpha <= 0.0);
    const auto ceil = concentration_ceiling(p, c);
    rep.ceiling = ceil.ceiling_J;
    rep.ceiling_i_plus_1 = ceil.ceiling_I_plus_1;

    const double coef =
        c.c_beta / ((2.0 + p.beta) * (2.0 + p.beta) * c.c_zero * c.m_beta_ball);
    for (const auto& f : seq) {
        const double energy = dirichlet_energy(f, p);
        if (energy > 1.0 + 1e-8)
            throw DomainError("classify_dichotomy: member exceeds the unit energy bound");
        const auto I = i_functional(f, p, cfg.quad);
        rep.j_trajectory.push_back(coef * I.i_value);
        rep.i_plus_1_trajectory.push_back(I.i_plus_1);
    }
    rep.tail_energies.resize(cfg.deltas.size());
    for (std::size_t d = 0; d < cfg.deltas.size(); ++d)
        for (const auto& f : seq)
            rep.tail_energies[d].push_back(tail_energy(f, cfg.deltas[d], p));
    rep.j_limit_candidate = rep.j_trajectory.back();

    // crossing diagnostics for the final member
    if (p.sigma) {
        const double cs = splitting_constant(*p.sigma, p.alpha);
        const auto& last = seq.back();
        const double energy = dirichlet_energy(last, p);
        if (cs * std::pow(energy, 1.0 / (2.0 + p.alpha)) <= 1.0 + 1e-12) {
            rep.crossing_a = crossing_point(last, cs, p);
            if (rep.crossing_a) {
                const double am = *rep.crossing_a;
                const double m = 2.0 + p.alpha;
                double tail = 0.0;
                for (std::size_t i = 0; i + 1 < last.grid.size(); ++i) {
                    const double a = std::max(last.grid[i], am);
                    const double b = last.grid[i + 1];
                    if (b <= a) continue;
                    const double slope = (last.values[i + 1] - last.values[i]) /
                                         (last.grid[i + 1] - last.grid[i]);
                    tail += std::pow(std::abs(slope), m) * (b - a);
                }
                const double dm = std::pow(cs, 1.0 + p.alpha) * tail;
                rep.delta_m = dm;
                const double b_alpha = (2.0 + p.alpha) / (1.0 + p.alpha);
                const double fam = last.value_at(am);
                const double room = 1.0 - (1.0 + *p.sigma) * dm;
                if (room > 0.0) {
                    rep.k_m = cs * (c.c_one * (1.0 + p.alpha) / 4.0) * std::pow(fam, b_alpha) -
                              (1.0 + p.alpha) / 4.0 * am * c.c_one +
                              (c.c_one * dm / room) * fam / 4.0;
                }
            }
        }
    }

    if (seq.size() < 2) {
        rep.verdict = DichotomyReport::Verdict::inconclusive;
        return rep;
    }

    bool concentrating = true;
    for (const auto& tails : rep.tail_energies)
        concentrating = concentrating && (tails.back() < cfg.concentration_tol);

    bool tail_persists = false;
    for (const auto& tails : rep.tail_energies)
        tail_persists = tail_persists || (tails.back() >= cfg.concentration_tol);

    const std::size_t window = std::max<std::size_t>(2, seq.size() / 3);
    bool cauchy = true;
    for (std::size_t i = rep.j_trajectory.size() - window; i + 1 < rep.j_trajectory.size(); ++i)
        cauchy = cauchy && std::abs(rep.j_trajectory[i + 1] - rep.j_trajectory[i]) <= cfg.j_tol;

    if (concentrating)
        rep.verdict = DichotomyReport::Verdict::concentrating;
    else if (cauchy && tail_persists)
        rep.verdict = DichotomyReport::Verdict::convergent;
    else
        rep.verdict = DichotomyReport::Verdict::inconclusive;
    return rep;
}

/// Ball-coordinate adapter: transforms each member and classifies in half-line
/// coordinates, where the functional identities are exact.
inline DichotomyReport classify_dichotomy(const std::vector<RadialProfile>& seq,
                                          const WeightParams& p, const ConstantsBundle& c,
                                          const DichotomyConfig& cfg = {}, int refine = 12) {
    std::vector<HalfLineProfile> transformed;
    transformed.reserve(seq.size());
    for (const auto& u : seq) transformed.push_back(to_halfline(u, p, c, refine));
    return classify_dichotomy(transformed, p, c, cfg);
}

} // namespace wmt

#endif
