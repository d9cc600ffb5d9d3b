#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "wmt/constants.hpp"
#include "wmt/special.hpp"

using namespace wmt;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("angular mass at simple exponents") {
    REQUIRE_THAT(angular_mass(0.0), Catch::Matchers::WithinAbs(kPi, 1e-10));
    REQUIRE_THAT(angular_mass(1.0), Catch::Matchers::WithinAbs(2.0, 1e-10));
    REQUIRE_THAT(angular_mass(2.0), Catch::Matchers::WithinAbs(kPi / 2.0, 1e-10));
    REQUIRE_THROWS_AS(angular_mass(-1.0), DomainError);
}

TEST_CASE("angular mass cross-checks against the Beta-function closed form") {
    for (double alpha : {-0.5, 0.0, 0.5, 1.0, 2.0, 5.0}) {
        REQUIRE_THAT(angular_mass(alpha),
                     Catch::Matchers::WithinAbs(sin_power_mass_closed_form(alpha), 1e-8));
    }
}

TEST_CASE("bundle constants at reference parameters") {
    const WeightParams p00{0.0, 0.0, {}};
    const auto c00 = build_constants(p00);
    REQUIRE_THAT(c00.a_sharp, Catch::Matchers::WithinRel(2.0 * kPi, 1e-10));
    REQUIRE_THAT(c00.T, Catch::Matchers::WithinRel(std::sqrt(2.0 * kPi), 1e-10));
    REQUIRE_THAT(c00.m_beta_ball, Catch::Matchers::WithinRel(kPi / 2.0, 1e-10));
    // the doubled-mass closed-form variant differs by 2^{1/(1+alpha)}
    REQUIRE_THAT(a_sharp_doubled_mass(p00, c00), Catch::Matchers::WithinRel(4.0 * kPi, 1e-10));

    const WeightParams p10{1.0, 0.0, {}};
    const auto c10 = build_constants(p10);
    REQUIRE_THAT(c10.a_sharp, Catch::Matchers::WithinRel(2.0 * std::sqrt(2.0), 1e-10));

    REQUIRE_THROWS_AS(build_constants(WeightParams{-1.5, 0.0, {}}), DomainError);
    REQUIRE_THROWS_AS(build_constants(p00, -1.0), DomainError);
}

TEST_CASE("transform scale identity T^{b_alpha} = a_sharp on random parameters") {
    std::mt19937_64 rng(20240901);
    std::uniform_real_distribution<double> dist(-0.9, 5.0);
    for (int i = 0; i < 100; ++i) {
        const WeightParams p{dist(rng), dist(rng), {}};
        const auto c = build_constants(p);
        REQUIRE_THAT(std::pow(c.T, c.b_alpha), Catch::Matchers::WithinRel(c.a_sharp, 1e-12));
    }
}

TEST_CASE("splitting constant values and shape") {
    REQUIRE_THAT(splitting_constant(1.0, 0.0), Catch::Matchers::WithinRel(2.0, 1e-13));
    REQUIRE_THAT(splitting_constant(1.0, 1.0),
                 Catch::Matchers::WithinRel(std::pow(0.75, -0.5), 1e-13));
    REQUIRE_THROWS_AS(splitting_constant(1.0, -1.0), DomainError);
    REQUIRE_THROWS_AS(splitting_constant(-1.0, 0.0), DomainError);

    // >= 1, decreasing in sigma, -> 1 at infinity, on a sampled grid
    for (double alpha : {-0.5, 0.0, 1.0, 3.0}) {
        double prev = std::numeric_limits<double>::infinity();
        for (double sigma = 0.25; sigma <= 64.0; sigma *= 2.0) {
            const double c = splitting_constant(sigma, alpha);
            REQUIRE(c >= 1.0);
            REQUIRE(c < prev);
            prev = c;
        }
        REQUIRE_THAT(splitting_constant(1e12, alpha), Catch::Matchers::WithinAbs(1.0, 1e-5));
    }
}

TEST_CASE("swapped-exponent constant: values and the T^{b_beta} identity") {
    // alpha=0, beta=1: (3 pi)^{3/4}
    {
        const WeightParams p{0.0, 1.0, {}};
        const double b = mixed_exponent_constant(p);
        REQUIRE_THAT(b, Catch::Matchers::WithinRel(std::pow(3.0 * kPi, 0.75), 1e-10));
    }
    // alpha=1, beta=2: both routes give 2^{20/9} (c_alpha = 2)
    {
        const WeightParams p{1.0, 2.0, {}};
        const double b = mixed_exponent_constant(p);
        REQUIRE_THAT(b, Catch::Matchers::WithinRel(std::pow(2.0, 20.0 / 9.0), 1e-10));
        const auto c = build_constants(p);
        REQUIRE_THAT(b, Catch::Matchers::WithinRel(std::pow(c.T, c.b_beta), 1e-10));
    }
    // near-equal exponents: continuity against T^{b_beta}
    {
        const WeightParams p{0.0, 1e-4, {}};
        const auto c = build_constants(p);
        REQUIRE_THAT(mixed_exponent_constant(p),
                     Catch::Matchers::WithinRel(std::pow(c.T, c.b_beta), 1e-10));
    }
    REQUIRE_THROWS_AS(mixed_exponent_constant(WeightParams{1.0, 0.5, {}}), DomainError);

    // identity b_alpha_beta = T^{b_beta} on random valid pairs
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> dist(-0.9, 5.0);
    for (int i = 0; i < 100; ++i) {
        double a = dist(rng), b = dist(rng);
        if (a == b) continue;
        const WeightParams p{std::min(a, b), std::max(a, b), {}};
        const auto c = build_constants(p);
        REQUIRE_THAT(mixed_exponent_constant(p, c.c_alpha),
                     Catch::Matchers::WithinRel(std::pow(c.T, c.b_beta), 1e-10));
    }
}

TEST_CASE("test-profile norm closed form") {
    REQUIRE_THAT(test_profile_norm(0.0), Catch::Matchers::WithinRel(1.0, 1e-13));
    REQUIRE_THAT(test_profile_norm(1.0),
                 Catch::Matchers::WithinRel(std::pow(2.0 / 3.0, 2.0 / 3.0) * std::cbrt(2.0), 1e-13));
    REQUIRE_THAT(test_profile_norm(1.0), Catch::Matchers::WithinAbs(0.96150, 5e-6));
}

TEST_CASE("feasibility scanner reports both hypotheses") {
    {
        const auto r = extremal_feasibility(0.0, 1.0);
        REQUIRE_THAT(r.gamma_phi0, Catch::Matchers::WithinRel(1.0, 1e-12));
        REQUIRE_THAT(r.bound, Catch::Matchers::WithinRel(0.5, 1e-12));
        REQUIRE_FALSE(r.feasible);
    }
    {
        // alpha=0: growth ratio is exactly sigma; bound -> 1 from below as sigma -> inf
        const auto r = extremal_feasibility(0.0, 1e8);
        REQUIRE_THAT(r.bound, Catch::Matchers::WithinAbs(1.0, 1e-7));
        REQUIRE_FALSE(r.feasible); // gamma_phi0 = 1 > bound < 1: boundary never crossed
    }
    {
        const auto r = extremal_feasibility(1.0, 0.5);
        REQUIRE_THAT(r.gamma_phi0, Catch::Matchers::WithinAbs(0.96150, 5e-6));
    }
    REQUIRE_THROWS_AS(extremal_feasibility(-2.0, 1.0), DomainError);
    REQUIRE_THROWS_AS(extremal_feasibility(0.0, -0.5), DomainError);
}
