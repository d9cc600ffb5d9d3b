#ifndef WMT_EXTREMAL_HPP
#define WMT_EXTREMAL_HPP

#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "wmt/concentration.hpp"
#include "wmt/constants.hpp"
#include "wmt/errors.hpp"
#include "wmt/functionals.hpp"
#include "wmt/profile.hpp"

namespace wmt {

/// Half-line search grid: uniform spacing h on [0, uniform_end], then geometrically
/// stretched cells up to s_max (the exponential weight makes the far region cheap).
struct GridSpec {
    double h = 0.05;
    double uniform_end = 20.0;
    double s_max = 80.0;
    double stretch = 1.05;

    void validate() const {
        if (!(h > 0.0) || !(uniform_end > h) || !(s_max > uniform_end) || !(stretch > 1.0))
            throw DomainError("GridSpec: need 0 < h < uniform_end < s_max and stretch > 1");
    }

    std::vector<double> knots() const {
        validate();
        std::vector<double> g;
        const int n_uniform = static_cast<int>(std::round(uniform_end / h));
        for (int i = 0; i <= n_uniform; ++i) g.push_back(uniform_end * i / n_uniform);
        double step = h;
        while (g.back() < s_max) {
            step *= stretch;
            g.push_back(std::min(g.back() + step, s_max));
            if (s_max - g.back() < 0.25 * step) g.back() = s_max;
        }
        return g;
    }
};

struct SearchConfig {
    double kappa = 1.0; // constraint radius: energy <= kappa^{2+alpha}
    GridSpec grid;
    int max_iters = 10000;
    double step0 = 0.1;
    double armijo = 1e-4;
    double conv_tol = 1e-9;
    std::vector<std::string> starts = {"zero-perturbed", "phi0", "moser(2)", "moser(5)",
                                       "moser(10)"};
    unsigned long long seed = 12345;

    void validate() const {
        if (!(kappa > 0.0)) throw DomainError("SearchConfig: kappa > 0 required");
        if (max_iters < 1) throw DomainError("SearchConfig: max_iters >= 1 required");
        if (!(step0 > 0.0)) throw DomainError("SearchConfig: step0 > 0 required");
        if (!(armijo > 0.0 && armijo < 1.0)) throw DomainError("SearchConfig: armijo in (0,1)");
        if (starts.empty()) throw DomainError("SearchConfig: need at least one start");
        grid.validate();
    }
};

struct StartOutcome {
    std::string name;
    double initial_value = 0.0; // I+1 at the projected start
    double final_value = 0.0;   // I+1 after ascent
    int iterations = 0;
    bool converged = false;
};

struct SearchResult {
    HalfLineProfile best_profile;
    double best_I_plus_1 = 0.0;
    double best_J = 0.0;
    std::vector<StartOutcome> per_start;
    double ceiling_margin = 0.0; // best_I_plus_1 - (1 + e)
    double el_relative_residual = 0.0;
    std::string best_start;
};

namespace detail {

/// Fixed-node discretization of I(f) on a given grid; the same nodes serve the
/// objective and its exact gradient, so finite differences of the objective match
/// the analytic gradient to truncation error.
class DiscreteObjective {
public:
    DiscreteObjective(std::vector<double> grid, double alpha, int nodes_per_cell = 12)
        : grid_(std::move(grid)), b_alpha_((2.0 + alpha) / (1.0 + alpha)), p_(2.0 + alpha) {
        const auto& rule = gauss_legendre(nodes_per_cell);
        const std::size_t ncells = grid_.size() - 1;
        node_pos_.reserve(ncells * rule.nodes.size());
        node_w_.reserve(ncells * rule.nodes.size());
        node_theta_.reserve(ncells * rule.nodes.size());
        node_cell_.reserve(ncells * rule.nodes.size());
        for (std::size_t i = 0; i < ncells; ++i) {
            const double a = grid_[i], b = grid_[i + 1];
            const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
            for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
                const double x = mid + half * rule.nodes[j];
                node_pos_.push_back(x);
                node_w_.push_back(rule.weights[j] * half * std::exp(-x));
                node_theta_.push_back((x - a) / (b - a));
                node_cell_.push_back(i);
            }
        }
        // lumped hat mass, used as a mesh-independent preconditioner for ascent
        mass_.assign(grid_.size(), 0.0);
        for (std::size_t i = 0; i < ncells; ++i) {
            const double w = 0.5 * (grid_[i + 1] - grid_[i]);
            mass_[i] += w;
            mass_[i + 1] += w;
        }
    }

    const std::vector<double>& grid() const { return grid_; }
    const std::vector<double>& mass() const { return mass_; }
    double b_alpha() const { return b_alpha_; }

    /// I+1; NaN when the exponent guard trips (caller shrinks the step).
    double value(const std::vector<double>& f) const {
        double acc = 0.0;
        for (std::size_t n = 0; n < node_pos_.size(); ++n) {
            const std::size_t i = node_cell_[n];
            const double fv = f[i] * (1.0 - node_theta_[n]) + f[i + 1] * node_theta_[n];
            const double ex = std::pow(fv, b_alpha_);
            if (ex > kExpLimit) return std::numeric_limits<double>::quiet_NaN();
            acc += node_w_[n] * std::expm1(ex);
        }
        const double ex_tail = std::pow(f.back(), b_alpha_);
        if (ex_tail > kExpLimit) return std::numeric_limits<double>::quiet_NaN();
        acc += std::expm1(ex_tail) * std::exp(-grid_.back());
        return acc + 1.0;
    }

    void gradient(const std::vector<double>& f, std::vector<double>& g) const {
        g.assign(f.size(), 0.0);
        for (std::size_t n = 0; n < node_pos_.size(); ++n) {
            const std::size_t i = node_cell_[n];
            const double th = node_theta_[n];
            const double fv = f[i] * (1.0 - th) + f[i + 1] * th;
            const double ex = std::pow(fv, b_alpha_);
            if (ex > kExpLimit) continue;
            const double d = node_w_[n] * b_alpha_ * std::pow(fv, b_alpha_ - 1.0) * std::exp(ex);
            g[i] += d * (1.0 - th);
            g[i + 1] += d * th;
        }
        const double ft = f.back();
        const double ex_tail = std::pow(ft, b_alpha_);
        if (ex_tail <= kExpLimit)
            g.back() += b_alpha_ * std::pow(ft, b_alpha_ - 1.0) * std::exp(ex_tail) *
                        std::exp(-grid_.back());
        g.front() = 0.0; // f(0) = 0 is pinned
    }

    double energy(const std::vector<double>& f) const {
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < grid_.size(); ++i) {
            const double ds = grid_[i + 1] - grid_[i];
            const double slope = (f[i + 1] - f[i]) / ds;
            if (slope != 0.0) acc += std::pow(std::abs(slope), p_) * ds;
        }
        return acc;
    }

    /// Exact projection onto {energy <= bound} by (2+alpha)-homogeneous rescaling.
    void project(std::vector<double>& f, double bound) const {
        const double e = energy(f);
        if (e > bound) {
            const double r = std::pow(bound / e, 1.0 / p_);
            for (double& v : f) v *= r;
        }
    }

private:
    std::vector<double> grid_;
    double b_alpha_;
    double p_;
    std::vector<double> node_pos_, node_w_, node_theta_;
    std::vector<std::size_t> node_cell_;
    std::vector<double> mass_;
};

inline std::optional<int> parse_moser_start(const std::string& name) {
    std::string digits;
    if (name.rfind("moser", 0) != 0) return std::nullopt;
    for (char ch : name.substr(5))
        if (ch >= '0' && ch <= '9') digits.push_back(ch);
    if (digits.empty()) return std::nullopt;
    return std::stoi(digits);
}

inline std::vector<double> build_start(const std::string& name, const std::vector<double>& grid,
                                       const WeightParams& p, double kappa,
                                       unsigned long long seed) {
    std::vector<double> f(grid.size(), 0.0);
    if (name == "zero-perturbed") {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> jitter(0.5, 1.5);
        for (std::size_t i = 1; i < grid.size(); ++i)
            f[i] = 1e-3 * std::min(grid[i], 10.0) / 10.0 * jitter(rng);
    } else if (name == "phi0") {
        const HalfLineProfile phi0 = carleson_chang_test(p.alpha);
        for (std::size_t i = 1; i < grid.size(); ++i) f[i] = phi0.value_at(grid[i]);
    } else if (auto n = parse_moser_start(name)) {
        const HalfLineProfile fn = moser_halfline(*n, p);
        for (std::size_t i = 1; i < grid.size(); ++i) f[i] = kappa * fn.value_at(grid[i]);
    } else {
        throw DomainError("maximize: unknown start '" + name + "'");
    }
    return f;
}

} // namespace detail

/// Projected gradient ascent on the discretized half-line functional, multi-start.
/// Feasibility is restored after every step by exact homogeneous rescaling; accepted
/// steps never decrease the objective, so the result dominates every start value.
inline SearchResult maximize(const WeightParams& p, const ConstantsBundle& c,
                             const SearchConfig& cfg) {
    p.validate();
    cfg.validate();
    const std::vector<double> grid = cfg.grid.knots();
    const detail::DiscreteObjective obj(grid, p.alpha);
    const double bound = std::pow(cfg.kappa, 2.0 + p.alpha);

    SearchResult result;
    result.best_I_plus_1 = -std::numeric_limits<double>::infinity();

    for (const auto& name : cfg.starts) {
        std::vector<double> f = detail::build_start(name, grid, p, cfg.kappa, cfg.seed);
        obj.project(f, bound);

        StartOutcome oc;
        oc.name = name;
        double cur = obj.value(f);
        if (std::isnan(cur)) {
            // infeasible exponent at the raw start; shrink until evaluable
            do {
                for (double& v : f) v *= 0.5;
                cur = obj.value(f);
            } while (std::isnan(cur));
        }
        oc.initial_value = cur;

        std::vector<double> g, trial;
        double step = cfg.step0;
        int flat_accepts = 0;
        int it = 0;
        for (; it < cfg.max_iters; ++it) {
            obj.gradient(f, g);
            // mesh-independent ascent direction: lumped-mass Riesz representative
            double gd = 0.0;
            for (std::size_t i = 0; i < g.size(); ++i) gd += g[i] * g[i] / obj.mass()[i];
            if (!(gd > 0.0)) {
                oc.converged = true;
                break;
            }

            bool accepted = false;
            while (step > 1e-16) {
                trial = f;
                for (std::size_t i = 1; i < trial.size(); ++i)
                    trial[i] += step * g[i] / obj.mass()[i];
                obj.project(trial, bound);
                const double val = obj.value(trial);
                if (!std::isnan(val) && val >= cur + cfg.armijo * step * gd) {
                    const double improvement = (val - cur) / std::max(1.0, std::abs(cur));
                    f.swap(trial);
                    cur = val;
                    accepted = true;
                    flat_accepts = (improvement < cfg.conv_tol) ? flat_accepts + 1 : 0;
                    step = std::min(step * 1.5, 1e6);
                    break;
                }
                step *= 0.5;
            }
            if (!accepted || flat_accepts >= 3) {
                oc.converged = true;
                break;
            }
        }
        oc.iterations = it;
        oc.final_value = cur;
        result.per_start.push_back(oc);

        if (cur > result.best_I_plus_1) {
            result.best_I_plus_1 = cur;
            result.best_start = name;
            HalfLineProfile bp;
            bp.grid = grid;
            bp.values = f;
            bp.has_plateau = true;
            result.best_profile = std::move(bp);
        }
    }

    result.best_J = j_of_halfline(result.best_profile, p, c);
    result.ceiling_margin = result.best_I_plus_1 - (1.0 + std::exp(1.0));

    // strong-form residual of the ball image, after monotone rearrangement
    const RadialProfile ball = from_halfline(result.best_profile, p, c, 1.0);
    const RadialProfile sorted = rearrange_decreasing(ball, p);
    result.el_relative_residual = el_residual(sorted, p, c).relative_residual;
    return result;
}

struct ConcentrationComparison {
    bool exceeds_ceiling = false;
    double margin = 0.0;
};

/// The numerical form of the contradiction argument: a maximizer whose shifted
/// functional exceeds 1 + e cannot come from a concentrating sequence.
inline ConcentrationComparison compare_with_concentration(const SearchResult& result,
                                                          const WeightParams& p,
                                                          const ConstantsBundle& c) {
    ConcentrationComparison out;
    const auto ceil = concentration_ceiling(p, c);
    out.margin = result.best_I_plus_1 - ceil.ceiling_I_plus_1;
    out.exceeds_ceiling = out.margin > 0.0;
    return out;
}

} // namespace wmt

#endif
