#include <doctest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "twistor/field.hpp"

using namespace twistor;
using twistor::testing::Gen;

namespace {

constexpr double kPi = std::numbers::pi;
// Independent oracles (tests/oracles): a hand evaluation of the integrand with
// a reference arctan, and kappa(+-0.5) from the high-precision one-sided limit
// integral at three probe locations.
constexpr double kIntegrandAtI = 1.3056296270506547962;
constexpr double kKappaHalf = 1.1547005383792515;

FieldContext unit_kappa(double eps) { return FieldContext::with_kappa(eps, eps == 0.0 ? 1.0 : kKappaHalf); }

}  // namespace

TEST_CASE("integrand_F reference values") {
    CHECK(std::abs(integrand_F(cplx{0, 1}, 0.0, 0.5, 1.0)) == 0.0);
    CHECK(std::abs(integrand_F(1.0, 1.0, 0.0, 1.0) - (kPi / 2 + 1)) < 1e-15);
    const cplx v = integrand_F(cplx{0, 1}, 0.5, 0.5, 0.0);
    CHECK(v.real() == doctest::Approx(kIntegrandAtI).epsilon(1e-15));
    CHECK(std::abs(v.imag()) < 1e-16);
}

TEST_CASE("integrand_dF_du matches a finite difference in u") {
    Gen gen(41);
    for (int i = 0; i < 30; ++i) {
        const double th = gen.uniform(0, kTwoPi), e = gen.uniform(-0.8, 0.8);
        const cplx w = std::polar(1.0, th);
        const cplx u{gen.uniform(-2, 2), gen.uniform(-0.5, 0.5)};
        if (distance_to_arctan_cuts(u / std::sqrt(q_of_w(w, e))) < 0.1) continue;
        const double h = 1e-5;
        const cplx fd = (integrand_F(w, u + h, e, 0.7) - integrand_F(w, u - h, e, 0.7)) / (2 * h);
        CHECK(std::abs(fd - integrand_dF_du(w, u, e, 0.7)) < 1e-8);
    }
}

TEST_CASE("phi on the axis matches the radial closed form") {
    const auto ctx = unit_kappa(0.0);
    for (double z : {-3.0, -0.5, 0.25, 1.0, 4.0}) {
        const auto v = phi(SpatialPoint(0, 0, z), ctx);
        CHECK(v.phi == doctest::Approx(radial_closed_form(z)).epsilon(1e-13));
        CHECK(v.region == RegionTag::OffPlane);
    }
    CHECK(phi(SpatialPoint(0, 0, 1), ctx).phi == doctest::Approx(kPi / 2 + 1).epsilon(1e-14));
}

TEST_CASE("radial_closed_form") {
    CHECK(radial_closed_form(0.0) == 0.0);
    CHECK(radial_closed_form(1.0) == doctest::Approx(kPi / 2 + 1));
    CHECK(radial_closed_form(1e6) / 1e12 == doctest::Approx(kPi / 2).epsilon(1e-5));
}

TEST_CASE("phi vanishes on the inner disc and is real") {
    Gen gen(42);
    for (double e : {-0.5, 0.0, 0.5}) {
        const auto ctx = FieldContext::with_kappa(e, 1.1);
        const auto c = EllipseConfig::from_eps(e);
        for (int i = 0; i < 20; ++i) {
            const auto v = phi(gen.scaled_ellipse(c, 0.0, 0.95), ctx);
            CHECK(v.phi == 0.0);
            CHECK(v.region == RegionTag::W0);
        }
        for (int i = 0; i < 20; ++i) {
            const auto v = phi(gen.off_plane(2.0, 0.05, 2.0), ctx);
            CHECK(std::abs(v.imag_part) <= 1e-12 * std::max(1.0, std::abs(v.phi)));
            CHECK(v.converged);
        }
    }
}

TEST_CASE("phi symmetries and phi_tilde") {
    Gen gen(43);
    const auto ctx = FieldContext::with_kappa(0.5, kKappaHalf);
    for (int i = 0; i < 50; ++i) {
        const SpatialPoint p = gen.off_plane(2.0, 0.05, 1.5);
        const auto v = phi(p, ctx);
        const double tol = 1e-11 * std::max(1.0, std::abs(v.phi));
        CHECK(std::abs(phi(SpatialPoint(p.x(), p.y(), -p.z()), ctx).phi + v.phi) <= tol);
        CHECK(std::abs(phi(SpatialPoint(-p.x(), p.y(), p.z()), ctx).phi - v.phi) <= tol);
        CHECK(std::abs(phi(SpatialPoint(p.x(), -p.y(), p.z()), ctx).phi - v.phi) <= tol);
        CHECK(v.phi_tilde == (p.z() > 0 ? v.phi : -v.phi));
    }
}

TEST_CASE("phi refuses the closed outer wall") {
    const auto ctx = unit_kappa(0.0);
    CHECK_THROWS_AS(phi(SpatialPoint(2, 0, 0), ctx), WallError);
    CHECK_THROWS_AS(phi(SpatialPoint(1, 0, 0), ctx), WallError);
    CHECK_THROWS_AS(phi_z(SpatialPoint(0, 1.5, 0), ctx), WallError);
    CHECK_THROWS_AS(phi_a(SpatialPoint(0, 1.5, 0), ctx), WallError);
    CHECK_THROWS_AS(phi_third_derivs(SpatialPoint(0, 1.5, 0), ctx), WallError);
    CHECK_NOTHROW(phi(SpatialPoint(2, 0, 1e-6), ctx));
}

TEST_CASE("gradient agrees with finite differences of phi") {
    Gen gen(44);
    for (double e : {-0.5, 0.5}) {
        const auto ctx = FieldContext::with_kappa(e, kKappaHalf);
        for (int i = 0; i < 15; ++i) {
            const SpatialPoint p = gen.off_plane(1.8, 0.2, 1.5);
            const double h = 1e-4;
            auto f = [&](double dx, double dy, double dz) {
                return phi(SpatialPoint(p.x() + dx, p.y() + dy, p.z() + dz), ctx).phi;
            };
            const auto g = gradient(p, ctx);
            CHECK(g.x == doctest::Approx((f(h, 0, 0) - f(-h, 0, 0)) / (2 * h)).epsilon(1e-7));
            CHECK(g.y == doctest::Approx((f(0, h, 0) - f(0, -h, 0)) / (2 * h)).epsilon(1e-7));
            CHECK(g.z == doctest::Approx((f(0, 0, h) - f(0, 0, -h)) / (2 * h)).epsilon(1e-7));
        }
    }
}

TEST_CASE("phi_Z on the inner disc at eps = 0") {
    const auto ctx = unit_kappa(0.0);
    CHECK(phi_z(SpatialPoint(0, 0, 0), ctx).value == doctest::Approx(2.0).epsilon(1e-13));
    for (double r : {0.0, 0.5, 0.9}) {
        std::vector<double> h, v;
        for (int k = 0; k < 6; ++k) {
            const double d = std::ldexp(1e-2, -k);
            h.push_back(d);
            v.push_back(phi_z(SpatialPoint(r, 0, d), ctx).value);
        }
        CHECK(std::abs(extrapolate_to_zero(h, v, 3) - 2.0 * std::sqrt(1 - r * r)) <= 1e-5);
    }
}

TEST_CASE("phi_A vanishes on the axis") {
    const auto ctx = unit_kappa(0.0);
    for (double z : {-2.0, 0.5, 3.0}) CHECK(std::abs(phi_a(SpatialPoint(0, 0, z), ctx).value) < 1e-14);
}

TEST_CASE("third derivatives") {
    const auto ctx = unit_kappa(0.0);
    const auto t = phi_third_derivs(SpatialPoint(0, 0, 1), ctx);
    CHECK(std::abs(t.phi_zzz - 1.0) <= 1e-8);
    CHECK(t.converged);

    Gen gen(45);
    for (double e : {-0.5, 0.5}) {
        const auto c = FieldContext::with_kappa(e, kKappaHalf);
        for (int i = 0; i < 10; ++i) {
            const SpatialPoint p = gen.off_plane(1.8, 0.3, 1.5);
            const auto d = phi_third_derivs(p, c);
            CHECK(std::abs(d.phi_zabarabar - std::conj(d.phi_zaa)) <= 1e-12 * std::max(1.0, std::abs(d.phi_zaa)));
            CHECK(std::abs(d.phi_zaabar + d.phi_zzz) <= 1e-12 * std::max(1.0, d.phi_zzz));

            // phi_ZZZ from second differences of phi_Z.
            const double h = 1e-3;
            auto fz = [&](double dx, double dy, double dz) {
                return phi_z(SpatialPoint(p.x() + dx, p.y() + dy, p.z() + dz), c).value;
            };
            const double f0 = fz(0, 0, 0);
            const double zz = (fz(0, 0, h) - 2 * f0 + fz(0, 0, -h)) / (h * h);
            CHECK(d.phi_zzz == doctest::Approx(zz).epsilon(1e-5));
            // d_A d_Abar = d_X^2 + d_Y^2, so phi_{Z A Abar} is the planar
            // Laplacian of phi_Z; by harmonicity it equals -phi_ZZZ.
            const double planar = (fz(h, 0, 0) + fz(-h, 0, 0) + fz(0, h, 0) + fz(0, -h, 0) - 4 * f0) / (h * h);
            CHECK(d.phi_zaabar.real() == doctest::Approx(planar).epsilon(1e-5));
            // phi_{ZAA} = (d_Y - i d_X)^2 phi_Z.
            const double xx = (fz(h, 0, 0) - 2 * f0 + fz(-h, 0, 0)) / (h * h);
            const double yy = (fz(0, h, 0) - 2 * f0 + fz(0, -h, 0)) / (h * h);
            const double xy = (fz(h, h, 0) - fz(h, -h, 0) - fz(-h, h, 0) + fz(-h, -h, 0)) / (4 * h * h);
            const cplx aa{yy - xx, -2 * xy};
            CHECK(std::abs(d.phi_zaa - aa) <= 1e-5 * std::max(1.0, std::abs(aa)));
        }
    }
}

TEST_CASE("derivative bundle is consistent with the parts") {
    const auto ctx = FieldContext::with_kappa(0.5, kKappaHalf);
    const SpatialPoint p(0.4, -0.7, 0.9);
    const auto b = derivatives(p, ctx);
    CHECK(b.phi_z == phi_z(p, ctx).value);
    CHECK(b.phi_a == phi_a(p, ctx).value);
    CHECK(b.phi_zzz == phi_third_derivs(p, ctx).phi_zzz);
    CHECK(b.converged);
}

TEST_CASE("calibrate_kappa") {
    const auto zero = calibrate_kappa(0.0);
    CHECK(std::abs(zero.kappa - 1.0) <= 1e-6);
    CHECK(zero.calibration.spread <= 1e-6);
    CHECK(zero.calibration.calibrated);
    CHECK(zero.calibration.extrapolated.size() == 2);

    for (double e : {-0.5, 0.5}) {
        const auto ctx = calibrate_kappa(e);
        CHECK(std::abs(ctx.kappa - kKappaHalf) <= 1e-9);
        CHECK(ctx.calibration.spread <= 1e-6);
        // With kappa fixed, phi_Z vanishes on the outer wall.
        const auto lim = phi_z_wall_limit(1.5 * ctx.ellipse.a, 0.0, ctx);
        CHECK(std::abs(lim.limit) <= 1e-8);
    }

    CHECK_THROWS_AS(calibrate_kappa(0.97), DomainError);
    CalibrationOptions bad;
    bad.probe_scale = {0.5};
    CHECK_THROWS_AS(calibrate_kappa(0.0, {}, bad), ConfigError);
    bad.probe_scale = {};
    CHECK_THROWS_AS(calibrate_kappa(0.0, {}, bad), ConfigError);
    QuadratureConfig starved;
    starved.max_nodes = 64;
    CHECK_THROWS_AS(calibrate_kappa(0.5, starved), CalibrationError);
}
