#include "twistor/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace twistor {

EllipseConfig EllipseConfig::from_eps(double eps) {
    if (!(eps > -1.0 && eps < 1.0)) {
        throw DomainError("ellipse parameter eps must lie in (-1, 1)");
    }
    return {eps, std::sqrt(1.0 + eps), std::sqrt(1.0 - eps)};
}

double SpatialPoint::radius() const { return std::sqrt(x_ * x_ + y_ * y_ + z_ * z_); }

cplx sigma_w(cplx w) { return -1.0 / std::conj(w); }

TwistorPoint sigma(const TwistorPoint& t) { return {sigma_w(t.w), std::conj(t.u)}; }

const char* to_string(RegionTag tag) {
    switch (tag) {
        case RegionTag::W0: return "W0";
        case RegionTag::WInfinity: return "WInfinity";
        case RegionTag::GammaCurve: return "GammaCurve";
        case RegionTag::OffPlane: return "OffPlane";
    }
    return "?";
}

const char* to_string(CirclePosition pos) {
    switch (pos) {
        case CirclePosition::Inside: return "inside";
        case CirclePosition::On: return "on";
        case CirclePosition::Outside: return "outside";
    }
    return "?";
}

cplx q_of_w(cplx w, double eps) {
    if (w == cplx{0.0, 0.0}) throw DomainError("q_of_w: w = 0");
    const cplx w2 = w * w;
    return 1.0 + 0.5 * eps * (w2 + 1.0 / w2);
}

cplx incidence_u(const SpatialPoint& p, cplx w) {
    if (w == cplx{0.0, 0.0}) throw DomainError("incidence_u: w = 0");
    return p.a() * w + p.z() - std::conj(p.a()) / w;
}

std::array<cplx, 5> incidence_quartic(const SpatialPoint& p, double eps) {
    // w^2 (Q + u^2) = (eps/2)(w^4 + 1) + w^2 + (A w^2 + Z w - conj(A))^2
    const cplx a = p.a();
    const cplx ab = std::conj(a);
    const double z = p.z();
    return {ab * ab + 0.5 * eps,
            -2.0 * z * ab,
            cplx{1.0 + z * z - 2.0 * std::norm(a), 0.0},
            2.0 * z * a,
            a * a + 0.5 * eps};
}

double discriminant(const SpatialPoint& p, double eps) {
    const cplx a = p.a();
    return (1.0 - eps * eps) - 4.0 * (std::norm(a) + eps * (a * a).real());
}

RegionTag classify_point(const SpatialPoint& p, double eps, double tol) {
    if (std::abs(p.z()) > tol) return RegionTag::OffPlane;
    const double delta = discriminant(p, eps);
    if (std::abs(delta) <= tol) return RegionTag::GammaCurve;
    return delta > 0.0 ? RegionTag::W0 : RegionTag::WInfinity;
}

namespace {

int nearest_index(const std::vector<SigmaRoot>& roots, cplx target, double tol) {
    int best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < roots.size(); ++j) {
        const double d = std::abs(roots[j].w - target);
        if (d < best_dist) {
            best_dist = d;
            best = static_cast<int>(j);
        }
    }
    return best_dist <= tol * std::max(1.0, std::abs(target)) ? best : -1;
}

}  // namespace

SigmaRootSet sigma_roots(const SpatialPoint& p, double eps, double pair_tol, double circle_tol) {
    SigmaRootSet out;
    out.delta = discriminant(p, eps);
    const auto c = incidence_quartic(p, eps);
    double scale = 0.0;
    for (const cplx& ck : c) scale = std::max(scale, std::abs(ck));

    PolyRoots found;
    if (std::abs(c[4]) <= 1e-12 * scale) {
        // c0 = conj(c4) vanishes as well: divide out w and drop the root at
        // infinity. Further vanishing low-order terms are roots escaping to
        // w = 0, which is not a point of the chart, so divide those out too.
        out.degenerate = true;
        std::vector<cplx> reduced{c[1], c[2], c[3]};
        while (reduced.size() > 1 && std::abs(reduced.front()) <= 1e-12 * scale) reduced.erase(reduced.begin());
        found = polynomial_roots(reduced, 1e-12);
    } else {
        found = quartic_roots(c, 1e-12);
    }
    out.polynomial = found.coefficients;
    out.polynomial.resize(found.effective_degree + 1);

    for (const cplx& w : found.roots) {
        SigmaRoot r{w};
        const double gap = std::abs(w) - 1.0;
        r.position = std::abs(gap) <= circle_tol ? CirclePosition::On
                     : gap < 0.0                 ? CirclePosition::Inside
                                                 : CirclePosition::Outside;
        out.roots.push_back(r);
    }
    for (auto& r : out.roots) {
        r.antipode = nearest_index(out.roots, -r.w, pair_tol);
        r.sigma_partner = nearest_index(out.roots, sigma_w(r.w), pair_tol);
    }
    return out;
}

double contour_safety_margin(const SpatialPoint& p, double eps, int nodes) {
    double margin = std::numeric_limits<double>::infinity();
    for (int j = 0; j < nodes; ++j) {
        const double theta = kTwoPi * j / nodes;
        const cplx w = std::polar(1.0, theta);
        const double q = 1.0 + eps * std::cos(2.0 * theta);
        const cplx zeta = incidence_u(p, w) / std::sqrt(q);
        margin = std::min(margin, distance_to_arctan_cuts(zeta));
    }
    return margin;
}

TwistorPoint line_to_twistor(const SpatialPoint& point_on_line, const Vec3& direction) {
    const double norm =
        std::sqrt(direction.x * direction.x + direction.y * direction.y + direction.z * direction.z);
    if (!(norm > 0.0)) throw DomainError("line_to_twistor: zero direction");
    const double dx = direction.x / norm;
    const double dy = direction.y / norm;
    const double dz = direction.z / norm;
    if (1.0 + dz < 1e-12 || 1.0 - dz < 1e-12) {
        throw DomainError("line_to_twistor: direction along the Z axis is singular in this chart");
    }
    const cplx w = cplx{dy, -dx} / (1.0 + dz);
    return {w, incidence_u(point_on_line, w)};
}

GaussMapSample gauss_map(double theta, Orientation orientation, double eps) {
    const EllipseConfig e = EllipseConfig::from_eps(eps);
    const double sign = static_cast<double>(static_cast<int>(orientation));
    const SpatialPoint point(e.a * std::cos(theta), e.b * std::sin(theta), 0.0);
    const Vec3 dir{-sign * e.a * std::sin(theta), sign * e.b * std::cos(theta), 0.0};
    const double len = std::hypot(dir.x, dir.y);

    GaussMapSample s;
    s.theta = theta;
    s.orientation = orientation;
    s.line_angle = std::atan2(dir.x, dir.y);
    s.image = line_to_twistor(point, dir);
    s.tangent_distance = std::abs(point.x() * dir.y - point.y() * dir.x) / len;
    return s;
}

double tangent_distance(double theta_line, double eps) {
    const EllipseConfig e = EllipseConfig::from_eps(eps);
    const double sx = std::sin(theta_line);
    const double cy = std::cos(theta_line);
    // Tangency where (-a sin t, b cos t) is parallel to (sin, cos).
    const double t = std::atan2(-e.b * sx, e.a * cy);
    const double px = e.a * std::cos(t);
    const double py = e.b * std::sin(t);
    return std::abs(px * cy - py * sx);
}

}  // namespace twistor
