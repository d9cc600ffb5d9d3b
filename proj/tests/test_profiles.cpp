#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "wmt/corpus.hpp"
#include "wmt/functionals.hpp"
#include "wmt/profile.hpp"

using namespace wmt;

namespace {
constexpr double kPi = std::numbers::pi;

const WeightParams p00{0.0, 0.0, {}};

RadialProfile cone_profile(int knots = 200, double amp = 1.0, double R = 1.0) {
    RadialProfile u;
    for (int i = 0; i <= knots; ++i) {
        u.grid.push_back(R * i / knots);
        u.values.push_back(amp * (1.0 - static_cast<double>(i) / knots));
    }
    return u;
}
} // namespace

TEST_CASE("profile validation rejects malformed data") {
    RadialProfile u;
    u.grid = {0.0, 1.0};
    u.values = {1.0, 0.5}; // does not vanish at R
    REQUIRE_THROWS_AS(u.validate(), DomainError);
    u.values = {1.0, -0.1};
    REQUIRE_THROWS_AS(u.validate(), DomainError);
    u.grid = {0.1, 1.0};
    u.values = {1.0, 0.0};
    REQUIRE_THROWS_AS(u.validate(), DomainError);

    HalfLineProfile f;
    f.grid = {0.0, 1.0};
    f.values = {0.5, 1.0}; // f(0) != 0
    REQUIRE_THROWS_AS(f.validate(), DomainError);
}

TEST_CASE("transform of the zero profile is zero") {
    const auto c = build_constants(p00);
    RadialProfile u;
    u.grid = {0.0, 0.5, 1.0};
    u.values = {0.0, 0.0, 0.0};
    const auto v = to_halfline(u, p00, c);
    for (double val : v.values) REQUIRE(val == 0.0);
    const auto back = from_halfline(v, p00, c, 1.0);
    for (double val : back.values) REQUIRE(val == 0.0);
}

TEST_CASE("transform of the unit cone matches the closed form") {
    const auto c = build_constants(p00);
    const auto u = cone_profile();
    const auto v = to_halfline(u, p00, c, 32);
    // v(s) = sqrt(2 pi) (1 - e^{-s/2}); at s = 2 ln 2 the value is sqrt(2 pi)/2
    const double s_probe = 2.0 * std::log(2.0);
    REQUIRE_THAT(v.value_at(s_probe),
                 Catch::Matchers::WithinAbs(std::sqrt(2.0 * kPi) / 2.0, 1e-5));
    for (double s : {0.5, 1.0, 3.0, 7.0}) {
        const double exact = std::sqrt(2.0 * kPi) * (1.0 - std::exp(-s / 2.0));
        REQUIRE_THAT(v.value_at(s), Catch::Matchers::WithinAbs(exact, 1e-4));
    }
}

TEST_CASE("round trip is the identity on knots") {
    const auto c = build_constants(p00);
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 5; ++trial) {
        const auto u = random_radial_profile(rng);
        const auto v = to_halfline(u, p00, c);
        const auto back = from_halfline(v, p00, c, u.R());
        for (std::size_t i = 0; i < u.grid.size(); ++i)
            REQUIRE_THAT(back.value_at(u.grid[i]),
                         Catch::Matchers::WithinAbs(u.values[i], 1e-10));
    }
}

TEST_CASE("energy equality under the transform on a random corpus") {
    const auto c = build_constants(p00);
    const WeightParams p21{2.0, 1.0, {}};
    const auto c21 = build_constants(p21);
    std::mt19937_64 rng(20240902);
    for (int trial = 0; trial < 50; ++trial) {
        const auto& p = (trial % 2 == 0) ? p00 : p21;
        const auto& cb = (trial % 2 == 0) ? c : c21;
        const auto u = random_radial_profile(rng, 1.0, 240);
        const double e_ball = dirichlet_energy(u, p, cb);
        const double e_half = dirichlet_energy(to_halfline(u, p, cb, 16), p);
        REQUIRE_THAT(e_half, Catch::Matchers::WithinAbs(e_ball, 2e-3 * (1.0 + e_ball)));
    }
}

TEST_CASE("moser profiles: closed forms and unit energy") {
    const auto c = build_constants(p00);

    // half-line at n=4, alpha=0: ramp s/2 with plateau 2
    const auto f4 = moser_halfline(4, p00);
    REQUIRE(f4.grid == std::vector<double>{0.0, 4.0});
    REQUIRE_THAT(f4.values[1], Catch::Matchers::WithinRel(2.0, 1e-14));
    REQUIRE(f4.has_plateau);
    REQUIRE_THAT(f4.value_at(1.0), Catch::Matchers::WithinRel(0.5, 1e-14));

    // unit energy in closed form for n <= 100, several alpha
    for (double alpha : {-0.5, 0.0, 1.0, 2.5}) {
        const WeightParams p{alpha, 0.7, {}};
        for (int n : {1, 3, 10, 40, 100}) {
            const auto fn = moser_halfline(n, p);
            REQUIRE_THAT(dirichlet_energy(fn, p), Catch::Matchers::WithinAbs(1.0, 1e-12));
        }
    }

    // ball plateau value at alpha=beta=0, n=2 is pi^{-1/2}
    const auto m2 = moser_ball(2, p00, c);
    REQUIRE_THAT(m2.values.front(), Catch::Matchers::WithinRel(1.0 / std::sqrt(kPi), 1e-12));
    REQUIRE_THAT(m2.values.front(), Catch::Matchers::WithinAbs(0.56419, 1e-5));
    REQUIRE(m2.R() == 1.0);

    // quadrature-grade energy of the sampled ball profile
    for (int n : {1, 5, 20, 40}) {
        const auto mn = moser_ball(n, p00, c);
        REQUIRE_THAT(dirichlet_energy(mn, p00, c), Catch::Matchers::WithinAbs(1.0, 1e-6));
    }

    // the transform carries the ball profile onto the two-piece half-line form
    // (knot-for-knot: the sampled ramp is linear in s, so no refinement is needed)
    const auto m5 = moser_ball(5, p00, c);
    const auto image = to_halfline(m5, p00, c, 1);
    const auto f5 = moser_halfline(5, p00);
    for (double s : {0.5, 2.0, 4.9, 5.0, 6.0, 11.0})
        REQUIRE_THAT(image.value_at(s), Catch::Matchers::WithinAbs(f5.value_at(s), 1e-9));

    // ball-image comparison in the other direction, n=2 against the closed form
    const auto back = from_halfline(moser_halfline(2, p00), p00, c, 1.0);
    const double plateau = 1.0 / std::sqrt(kPi);
    for (std::size_t i = 0; i < back.grid.size(); ++i) {
        const double rho = back.grid[i];
        const double exact =
            (rho <= std::exp(-1.0)) ? plateau : plateau * std::log(1.0 / rho);
        REQUIRE_THAT(back.values[i], Catch::Matchers::WithinAbs(exact, 1e-12));
    }
}

TEST_CASE("rearrangement: fixed point on nonincreasing profiles") {
    const auto u = cone_profile(60, 1.7);
    const auto r = rearrange_decreasing(u, p00);
    for (std::size_t i = 0; i < u.values.size(); ++i)
        REQUIRE_THAT(r.values[i], Catch::Matchers::WithinAbs(u.values[i], 1e-12));
}

TEST_CASE("rearrangement of the increasing ramp gives sqrt(1-rho^2)") {
    // u = rho, closed by a sharp drop at the boundary; beta = 0
    RadialProfile u;
    const int knots = 400;
    for (int i = 0; i <= knots; ++i) {
        u.grid.push_back(static_cast<double>(i) / knots);
        u.values.push_back(static_cast<double>(i) / knots);
    }
    u.grid.push_back(1.0 + 1e-9);
    u.values.push_back(0.0);
    const auto r = rearrange_decreasing(u, p00);
    for (double rho : {0.0, 0.2, 0.5, 0.8, 0.95})
        REQUIRE_THAT(r.value_at(rho),
                     Catch::Matchers::WithinAbs(std::sqrt(1.0 - rho * rho), 1e-5));
}

TEST_CASE("rearrangement: equimeasurability and monotonicity on random profiles") {
    std::mt19937_64 rng(20240903);
    const WeightParams pb{0.5, 1.5, {}};
    for (int trial = 0; trial < 50; ++trial) {
        const auto& p = (trial % 2 == 0) ? p00 : pb;
        const auto u = random_radial_profile(rng, 1.0, 300);
        const auto r = rearrange_decreasing(u, p);

        for (std::size_t i = 1; i < r.values.size(); ++i) REQUIRE(r.values[i] <= r.values[i - 1]);
        REQUIRE(r.R() == u.R());

        const double vmax = *std::max_element(u.values.begin(), u.values.end());
        for (double frac : {0.05, 0.3, 0.6, 0.9}) {
            const double lam = frac * vmax;
            const double mu_u = detail::level_set_measure(u, lam, p.beta);
            const double mu_r = detail::level_set_measure(r, lam, p.beta);
            REQUIRE_THAT(mu_r, Catch::Matchers::WithinAbs(mu_u, 5e-4 * (1.0 + mu_u)));
        }
    }
}

TEST_CASE("rearrangement of a two-bump profile matches its distribution") {
    RadialProfile u;
    const int knots = 500;
    for (int i = 0; i <= knots; ++i) {
        const double rho = static_cast<double>(i) / knots;
        u.grid.push_back(rho);
        const double b1 = std::exp(-std::pow((rho - 0.3) / 0.12, 2));
        const double b2 = 0.7 * std::exp(-std::pow((rho - 0.7) / 0.1, 2));
        u.values.push_back(b1 + b2);
    }
    u.values.back() = 0.0;
    const auto r = rearrange_decreasing(u, p00);
    for (std::size_t i = 1; i < r.values.size(); ++i) REQUIRE(r.values[i] <= r.values[i - 1]);
    for (double lam : {0.1, 0.3, 0.5, 0.8, 0.99}) {
        const double mu_u = detail::level_set_measure(u, lam, 0.0);
        const double mu_r = detail::level_set_measure(r, lam, 0.0);
        REQUIRE_THAT(mu_r, Catch::Matchers::WithinAbs(mu_u, 5e-4));
    }
}

TEST_CASE("carleson-chang test profile: sampling accuracy") {
    for (double alpha : {0.0, 1.0}) {
        const auto phi0 = carleson_chang_test(alpha);
        REQUIRE(phi0.values.front() == 0.0);
        const WeightParams p{alpha, 0.0, {}};
        const double gamma = halfline_norm(phi0, p);
        REQUIRE_THAT(gamma, Catch::Matchers::WithinAbs(test_profile_norm(alpha), 1e-6));
        const double top = std::exp(2.0 * (1.0 + alpha) / (2.0 + alpha));
        REQUIRE_THAT(phi0.value_at(std::exp(2.0) + 1.5), Catch::Matchers::WithinRel(top, 1e-12));
    }
}

TEST_CASE("serialization round trip is bit exact") {
    std::mt19937_64 rng(404);
    const WeightParams p{0.75, -0.25, 1.5};
    for (int trial = 0; trial < 10; ++trial) {
        const auto u = random_radial_profile(rng, 0.8 + 0.4 * (trial % 3), 50);
        std::stringstream ss;
        write_profile(ss, u, p);
        const auto parsed = read_profile(ss);
        REQUIRE(parsed.is_ball);
        REQUIRE(parsed.ball.grid == u.grid);
        REQUIRE(parsed.ball.values == u.values);
        REQUIRE(parsed.params.alpha == p.alpha);
        REQUIRE(parsed.params.beta == p.beta);
        REQUIRE(parsed.params.sigma == p.sigma);
    }
    const auto f = moser_halfline(7, p);
    std::stringstream ss;
    write_profile(ss, f, p);
    const auto parsed = read_profile(ss);
    REQUIRE_FALSE(parsed.is_ball);
    REQUIRE(parsed.halfline.grid == f.grid);
    REQUIRE(parsed.halfline.values == f.values);
    REQUIRE(parsed.halfline.has_plateau);
}
