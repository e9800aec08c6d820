#include "twistor/field.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace twistor {

namespace {

struct ContourPoint {
    cplx w;
    double q;  // Q(w), real on the unit circle
    cplx u;
};

ContourPoint contour_point(const SpatialPoint& p, double eps, double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    // u = Z + i(X cos theta + Y sin theta), identical to A w + Z - conj(A)/w.
    return {cplx{c, s}, 1.0 + eps * std::cos(2.0 * theta), cplx{p.z(), p.x() * c + p.y() * s}};
}

cplx arctan_term(cplx u, double q) { return branch_arctan(u / std::sqrt(q)); }

}  // namespace

FieldContext FieldContext::with_kappa(double eps, double kappa, const QuadratureConfig& quad) {
    quad.validate();
    FieldContext ctx;
    ctx.ellipse = EllipseConfig::from_eps(eps);
    ctx.kappa = kappa;
    ctx.quad = quad;
    return ctx;
}

cplx integrand_F(cplx w, cplx u, double eps, double kappa) {
    const double q = q_of_w(w, eps).real();
    return std::pow(q, -1.5) * (q + u * u) * arctan_term(u, q) + kappa * u;
}

cplx integrand_dF_du(cplx w, cplx u, double eps, double kappa) {
    const double q = q_of_w(w, eps).real();
    return 2.0 * u * std::pow(q, -1.5) * arctan_term(u, q) + 1.0 / q + kappa;
}

void require_off_wall(const SpatialPoint& p, double eps) {
    if (std::abs(p.z()) <= kGammaTolerance && discriminant(p, eps) <= kGammaTolerance) {
        std::ostringstream msg;
        msg << "point (" << p.x() << ", " << p.y() << ", " << p.z()
            << ") lies on the closure of the outer wall; only one-sided limits exist there";
        throw WallError(msg.str());
    }
}

FieldValue phi(const SpatialPoint& p, const FieldContext& ctx) {
    const double eps = ctx.eps();
    require_off_wall(p, eps);
    const auto r = integrate_circle(
        [&](double theta) {
            const auto c = contour_point(p, eps, theta);
            return std::pow(c.q, -1.5) * (c.q + c.u * c.u) * arctan_term(c.u, c.q) + ctx.kappa * c.u;
        },
        ctx.quad);
    FieldValue v;
    v.phi = r.value.real();
    v.imag_part = r.value.imag();
    v.phi_tilde = p.z() > 0.0 ? v.phi : (p.z() < 0.0 ? -v.phi : 0.0);
    v.error_estimate = r.error_estimate;
    v.nodes_used = r.nodes_used;
    v.converged = r.converged;
    v.region = classify_point(p, eps);
    return v;
}

Estimate<double> phi_z(const SpatialPoint& p, const FieldContext& ctx) {
    const double eps = ctx.eps();
    require_off_wall(p, eps);
    const auto r = integrate_circle(
        [&](double theta) {
            const auto c = contour_point(p, eps, theta);
            return 2.0 * c.u * std::pow(c.q, -1.5) * arctan_term(c.u, c.q) + 1.0 / c.q + ctx.kappa;
        },
        ctx.quad);
    return {r.value.real(), r.error_estimate, r.nodes_used, r.converged};
}

Estimate<cplx> phi_a(const SpatialPoint& p, const FieldContext& ctx) {
    const double eps = ctx.eps();
    require_off_wall(p, eps);
    // phi_A = mean of dF/du * du/dA with du/dA = w. The 1/Q + kappa part of
    // dF/du is even in w and contributes nothing, but is kept for fidelity.
    const auto r = integrate_circle(
        [&](double theta) {
            const auto c = contour_point(p, eps, theta);
            const cplx fu = 2.0 * c.u * std::pow(c.q, -1.5) * arctan_term(c.u, c.q) + 1.0 / c.q + ctx.kappa;
            return fu * c.w;
        },
        ctx.quad);
    return {r.value, r.error_estimate, r.nodes_used, r.converged};
}

Gradient gradient(const SpatialPoint& p, const FieldContext& ctx) {
    const cplx a = phi_a(p, ctx).value;
    return {-a.imag(), a.real(), phi_z(p, ctx).value};
}

ThirdDerivatives phi_third_derivs(const SpatialPoint& p, const FieldContext& ctx) {
    const double eps = ctx.eps();
    require_off_wall(p, eps);
    // d^3F/du^3 = 4/(Q + u^2)^2. Each contour form g(w) dw/w becomes the
    // theta-mean of g(e^{i theta}) since dw/w = i dtheta:
    //   phi_ZZZ     <- (2/pi i) * contour of (Q+u^2)^-2 dw/w      = mean 4/(Q+u^2)^2
    //   phi_ZAA     <- (2/pi i) * contour of (Q+u^2)^-2 w dw      = mean 4 w^2/(Q+u^2)^2
    //   phi_ZAbAb   <- (2/pi i) * contour of (Q+u^2)^-2 w^-3 dw   = mean 4 w^-2/(Q+u^2)^2
    auto kernel = [&](double theta, int power) {
        const auto c = contour_point(p, eps, theta);
        const cplx d = c.q + c.u * c.u;
        const cplx w2 = power > 0 ? c.w * c.w : (power < 0 ? std::conj(c.w * c.w) : cplx{1.0, 0.0});
        return 4.0 * w2 / (d * d);
    };
    const auto zzz = integrate_circle([&](double t) { return kernel(t, 0); }, ctx.quad);
    const auto zaa = integrate_circle([&](double t) { return kernel(t, 1); }, ctx.quad);
    const auto zbb = integrate_circle([&](double t) { return kernel(t, -1); }, ctx.quad);
    ThirdDerivatives out;
    out.phi_zzz = zzz.value.real();
    out.phi_zaa = zaa.value;
    out.phi_zabarabar = zbb.value;
    out.phi_zaabar = -zzz.value;
    out.error_estimate = std::max({zzz.error_estimate, zaa.error_estimate, zbb.error_estimate});
    out.converged = zzz.converged && zaa.converged && zbb.converged;
    return out;
}

DerivativeBundle derivatives(const SpatialPoint& p, const FieldContext& ctx) {
    const auto z = phi_z(p, ctx);
    const auto a = phi_a(p, ctx);
    const auto t = phi_third_derivs(p, ctx);
    DerivativeBundle b;
    b.phi_z = z.value;
    b.phi_a = a.value;
    b.phi_zzz = t.phi_zzz;
    b.phi_zaa = t.phi_zaa;
    b.phi_zabarabar = t.phi_zabarabar;
    b.phi_zaabar = t.phi_zaabar;
    b.error_estimate = std::max({z.error_estimate, a.error_estimate, t.error_estimate});
    b.converged = z.converged && a.converged && t.converged;
    return b;
}

double radial_closed_form(double z) { return (1.0 + z * z) * std::atan(z) + z; }

OneSidedLimit phi_z_wall_limit(double x, double y, const FieldContext& ctx, double delta0, int count,
                               int points) {
    OneSidedLimit out;
    for (int k = 0; k < count; ++k) {
        const double delta = std::ldexp(delta0, -k);
        const auto v = phi_z(SpatialPoint(x, y, delta), ctx);
        out.deltas.push_back(delta);
        out.values.push_back(v.value);
        out.converged = out.converged && v.converged;
    }
    out.limit = extrapolate_to_zero(out.deltas, out.values, points);
    return out;
}

FieldContext calibrate_kappa(double eps, const QuadratureConfig& quad, const CalibrationOptions& opts) {
    if (std::abs(eps) > opts.eps_ceiling) {
        std::ostringstream msg;
        msg << "calibrate_kappa: |eps| = " << std::abs(eps) << " exceeds the ceiling " << opts.eps_ceiling;
        throw DomainError(msg.str());
    }
    if (opts.probe_scale.empty()) throw ConfigError("calibrate_kappa: no probes");
    FieldContext raw = FieldContext::with_kappa(eps, 0.0, quad);

    CalibrationReport report;
    report.probe_scale = opts.probe_scale;
    for (double c : opts.probe_scale) {
        if (!(c > 1.0)) throw ConfigError("calibrate_kappa: probes must lie outside the ellipse");
        const auto lim = phi_z_wall_limit(c * raw.ellipse.a, 0.0, raw, opts.delta0, opts.delta_count,
                                          opts.extrapolation_points);
        if (!lim.converged) {
            throw CalibrationError("calibrate_kappa: quadrature did not converge at a probe; raise max_nodes");
        }
        report.deltas = lim.deltas;
        report.raw.push_back(lim.values);
        report.extrapolated.push_back(lim.limit);
    }
    const auto [lo, hi] = std::minmax_element(report.extrapolated.begin(), report.extrapolated.end());
    report.spread = *hi - *lo;
    if (report.spread > opts.spread_tolerance) {
        std::ostringstream msg;
        msg << "calibrate_kappa: probe limits disagree by " << report.spread;
        throw CalibrationError(msg.str());
    }
    double mean = 0.0;
    for (double v : report.extrapolated) mean += v;
    mean /= static_cast<double>(report.extrapolated.size());

    report.calibrated = true;
    raw.kappa = -mean;
    raw.calibration = std::move(report);
    return raw;
}

}  // namespace twistor
