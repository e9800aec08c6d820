#include <doctest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "twistor/asymptotics.hpp"

using namespace twistor;
using twistor::testing::Gen;

namespace {

constexpr double kPi = std::numbers::pi;
// 1e6-node Riemann sums (tests/oracles/misc_oracles.py).
constexpr double kLambdaHalf = 0.6268841543576696;
constexpr double kMuHalf = 1.4326238774001787;
constexpr double kNuHalf = 2.059508031757849;
constexpr double kKappaHalf = 1.1547005383792515;

}  // namespace

TEST_CASE("coefficients at eps = 0") {
    const auto c = coefficients(0.0);
    CHECK(std::abs(c.lambda - kPi / 4) <= 1e-10);
    CHECK(std::abs(c.mu - kPi / 4) <= 1e-10);
    CHECK(std::abs(c.nu - kPi / 2) <= 1e-10);
    CHECK(std::abs(c.varpi - 0.5) <= 1e-10);
    CHECK(c.converged);
}

TEST_CASE("coefficients against the brute-force oracle") {
    const auto c = coefficients(0.5);
    CHECK(c.lambda == doctest::Approx(kLambdaHalf).epsilon(1e-12));
    CHECK(c.mu == doctest::Approx(kMuHalf).epsilon(1e-12));
    CHECK(c.nu == doctest::Approx(kNuHalf).epsilon(1e-12));
    const auto m = coefficients(-0.5);
    CHECK(m.lambda == doctest::Approx(kMuHalf).epsilon(1e-12));
    CHECK(m.nu == doctest::Approx(kNuHalf).epsilon(1e-12));
}

TEST_CASE("coefficient identities") {
    Gen gen(51);
    for (int i = 0; i < 30; ++i) {
        const double e = gen.uniform(-0.95, 0.95);
        const auto c = coefficients(e);
        const auto m = coefficients(-e);
        CHECK(c.identity_residual <= 1e-10);
        CHECK(std::abs(m.lambda - c.mu) <= 1e-10);
        CHECK(std::abs(m.nu - c.nu) <= 1e-10);
        CHECK(std::abs(c.varpi + m.varpi - 1.0) <= 1e-10);
        CHECK(c.lambda > 0.0);
        CHECK(c.mu > 0.0);
    }
    CHECK_THROWS_AS(coefficients(1.0), DomainError);
}

TEST_CASE("varpi decreases from 1 to 0") {
    std::vector<double> grid;
    for (int j = 0; j <= 6; ++j) grid.push_back(-0.9 + 0.3 * j);
    auto curve = varpi_curve(grid);
    REQUIRE(curve.size() == grid.size());
    for (std::size_t j = 1; j < curve.size(); ++j) CHECK(curve[j].varpi < curve[j - 1].varpi);
    CHECK(coefficients(-0.95).varpi > 0.9);
    CHECK(coefficients(0.95).varpi < 0.1);

    Gen gen(52);
    for (int i = 0; i < 50; ++i) {
        const double a = gen.uniform(-0.95, 0.95), b = gen.uniform(-0.95, 0.95);
        if (std::abs(a - b) < 1e-3) continue;
        CHECK((coefficients(std::min(a, b)).varpi > coefficients(std::max(a, b)).varpi));
    }
}

TEST_CASE("monotonicity identity") {
    const auto p = monotonicity_probe(2.0, 1.5);
    CHECK(p.identity_residual <= 1e-6);
    CHECK(p.cs_gap > 0.0);

    const auto q = monotonicity_probe(1.0, 1.0);
    CHECK(q.cs_gap > 0.0);
    CHECK(std::abs(q.lhs - q.rhs) <= 1e-6);

    const auto flat = monotonicity_probe(1.0, 1.0, [](double) { return 0.3; });
    CHECK(std::abs(flat.cs_gap) <= 1e-12);
    CHECK(flat.identity_residual <= 1e-6);

    Gen gen(53);
    for (int i = 0; i < 10; ++i) {
        const double eta = gen.uniform(0.1, 5.0), alpha = gen.uniform(0.5, 3.0);
        const auto r = monotonicity_probe(eta, alpha);
        CHECK(r.identity_residual <= 1e-6 * std::max(1.0, std::abs(r.rhs)));
        CHECK(r.cs_gap > 0.0);
    }
    CHECK_THROWS_AS(monotonicity_probe(-1.0, 1.0), DomainError);
}

TEST_CASE("quadratic_part") {
    CoefficientSet c;
    c.lambda = 1.0;
    c.mu = 2.0;
    c.nu = 3.0;
    CHECK(quadratic_part(c, {1.0, 1.0, 1.0}) == 0.0);
    CHECK(quadratic_part(c, {0.0, 0.0, 2.0}) == 12.0);
}

TEST_CASE("asymptotic residual on the axis at eps = 0") {
    const auto ctx = FieldContext::with_kappa(0.0, 1.0);
    const auto c = coefficients(0.0);
    const auto s = asymptotic_residual({0, 0, 1}, {10.0, 100.0}, ctx, c);
    REQUIRE(s.size() == 2);
    for (const auto& x : s) {
        const double R = x.radius;
        CHECK(x.phi_tilde == doctest::Approx((1 + R * R) * std::atan(R) + R).epsilon(1e-12));
        CHECK(x.residual_over_r == doctest::Approx(((1 + R * R) * std::atan(R) + R - kPi / 2 * R * R) / R).epsilon(1e-8));
    }
    CHECK(std::abs(s[1].residual_over_r) <= 2.0 * std::abs(s[0].residual_over_r));
}

TEST_CASE("asymptotic residual stays bounded off the axis") {
    const auto ctx = FieldContext::with_kappa(0.5, kKappaHalf);
    const auto c = coefficients(0.5);
    for (const Vec3& d : {Vec3{1, 1, 1}, Vec3{1, -2, 0.5}, Vec3{0, 1, -1}}) {
        const auto s = asymptotic_residual(d, {10.0, 50.0, 100.0}, ctx, c);
        CHECK(std::abs(s.back().residual_over_r) <= 2.0 * std::abs(s.front().residual_over_r));
        const double rescaled = rescaled_residual_over_r(d, 10.0, 5.0, ctx, c);
        CHECK(std::abs(rescaled) <= 2.0 * std::abs(s.front().residual_over_r));
    }
    CHECK_THROWS_AS(asymptotic_residual({0, 0, 0}, {10.0}, ctx, c), DomainError);
}

TEST_CASE("growth of the coefficients near eps = 1") {
    // nu ~ (1 - eps)^-1 and lambda grows only logarithmically.
    const double nu = growth_slope([](const CoefficientSet& s) { return s.nu; }, 0.95, 0.99);
    CHECK(nu == doctest::Approx(-1.0).epsilon(0.1));
    const double mu = growth_slope([](const CoefficientSet& s) { return s.mu; }, 0.95, 0.99);
    CHECK(mu == doctest::Approx(-1.0).epsilon(0.1));
    const double lambda = growth_slope([](const CoefficientSet& s) { return s.lambda; }, 0.9, 0.99);
    CHECK(std::abs(lambda) < 0.5);
}
