#include "twistor/asymptotics.hpp"

#include <cmath>

namespace twistor {

CoefficientSet coefficients(double eps, const QuadratureConfig& quad) {
    EllipseConfig::from_eps(eps);
    // Each coefficient is (1/4) * 2pi * mean(...) = (pi/2) * mean(...).
    const double scale = 0.5 * std::numbers::pi;
    auto weight = [eps](double theta) { return std::pow(1.0 + eps * std::cos(2.0 * theta), -1.5); };
    const auto l = integrate_circle(
        [&](double t) { return cplx{std::cos(t) * std::cos(t) * weight(t), 0.0}; }, quad);
    const auto m = integrate_circle(
        [&](double t) { return cplx{std::sin(t) * std::sin(t) * weight(t), 0.0}; }, quad);
    const auto n = integrate_circle([&](double t) { return cplx{weight(t), 0.0}; }, quad);

    CoefficientSet c;
    c.eps = eps;
    c.lambda = scale * l.value.real();
    c.mu = scale * m.value.real();
    c.nu = scale * n.value.real();
    c.varpi = c.lambda / c.nu;
    c.identity_residual = std::abs(c.lambda + c.mu - c.nu);
    c.converged = l.converged && m.converged && n.converged;
    return c;
}

std::vector<VarpiPoint> varpi_curve(const std::vector<double>& eps_grid, const QuadratureConfig& quad) {
    std::vector<VarpiPoint> out;
    out.reserve(eps_grid.size());
    for (double e : eps_grid) out.push_back({e, coefficients(e, quad).varpi});
    return out;
}

MonotonicityProbe monotonicity_probe(double eta, double alpha, const std::function<double(double)>& weight,
                                     double fd_step, const QuadratureConfig& quad) {
    if (!(eta > 0.0) || !(alpha > 0.0)) throw DomainError("monotonicity_probe: eta and alpha must be positive");
    const std::function<double(double)> f =
        weight ? weight : [](double t) { return std::cos(t) * std::cos(t); };
    auto integral = [&](auto&& g) { return kTwoPi * integrate_circle([&](double t) { return cplx{g(t), 0.0}; }, quad).value.real(); };
    auto i_of = [&](double e) { return integral([&](double t) { return std::pow(1.0 + e * f(t), -alpha); }); };
    auto j_of = [&](double e) { return integral([&](double t) { return f(t) * std::pow(1.0 + e * f(t), -alpha); }); };

    MonotonicityProbe m;
    m.eta = eta;
    m.alpha = alpha;
    m.i_val = i_of(eta);
    m.j_val = j_of(eta);
    m.d_i = (i_of(eta + fd_step) - i_of(eta - fd_step)) / (2.0 * fd_step);
    m.d_j = (j_of(eta + fd_step) - j_of(eta - fd_step)) / (2.0 * fd_step);
    auto dm = [&](double t) { return std::pow(1.0 + eta * f(t), -(1.0 + alpha)); };
    m.m0 = integral(dm);
    m.m1 = integral([&](double t) { return f(t) * dm(t); });
    m.m2 = integral([&](double t) { return f(t) * f(t) * dm(t); });
    m.cs_gap = m.m2 * m.m0 - m.m1 * m.m1;
    m.lhs = m.j_val * m.d_i - m.i_val * m.d_j;
    m.rhs = alpha * m.cs_gap;
    m.identity_residual = std::abs(m.lhs - m.rhs);
    return m;
}

double quadratic_part(const CoefficientSet& c, const Vec3& p) {
    return -c.lambda * p.x * p.x - c.mu * p.y * p.y + c.nu * p.z * p.z;
}

namespace {

Vec3 normalized(const Vec3& d) {
    const double n = std::sqrt(d.x * d.x + d.y * d.y + d.z * d.z);
    if (!(n > 0.0)) throw DomainError("zero direction");
    return {d.x / n, d.y / n, d.z / n};
}

Vec3 scaled(const Vec3& d, double s) { return {s * d.x, s * d.y, s * d.z}; }

}  // namespace

std::vector<AsymptoticSample> asymptotic_residual(const Vec3& direction, const std::vector<double>& radii,
                                                  const FieldContext& ctx, const CoefficientSet& coeffs) {
    const Vec3 d = normalized(direction);
    std::vector<AsymptoticSample> out;
    for (double r : radii) {
        const Vec3 p = scaled(d, r);
        const auto v = phi(SpatialPoint(p), ctx);
        out.push_back({d, r, v.phi_tilde, (v.phi_tilde - quadratic_part(coeffs, p)) / r});
    }
    return out;
}

double rescaled_residual_over_r(const Vec3& direction, double radius, double rho, const FieldContext& ctx,
                                const CoefficientSet& coeffs) {
    const Vec3 p = scaled(normalized(direction), radius);
    const auto v = phi(SpatialPoint(scaled(p, rho)), ctx);
    return (v.phi_tilde / (rho * rho) - quadratic_part(coeffs, p)) / radius;
}

double growth_slope(double (*select)(const CoefficientSet&), double eps1, double eps2,
                    const QuadratureConfig& quad) {
    const double v1 = select(coefficients(eps1, quad));
    const double v2 = select(coefficients(eps2, quad));
    return std::log(v2 / v1) / std::log((1.0 - eps2) / (1.0 - eps1));
}

}  // namespace twistor
