#pragma once

// The ellipse, the plane regions inside and outside it, the incidence
// relation between points of R^3 and oriented lines (w, u), the curve
// Q(w) + u^2 = 0 and its root locus, and the tangent-line Gauss maps.

#include <array>
#include <vector>

#include "twistor/numerics.hpp"

namespace twistor {

/// Ellipse X^2/a^2 + Y^2/b^2 = 1 in the plane Z = 0 with a^2 = 1 + eps and
/// b^2 = 1 - eps.
struct EllipseConfig {
    double eps = 0.0;
    double a = 1.0;
    double b = 1.0;

    /// Throws DomainError unless -1 < eps < 1.
    static EllipseConfig from_eps(double eps);
};

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

/// A point (X, Y, Z) of R^3 with its complex coordinate A = (Y + iX)/2.
class SpatialPoint {
public:
    SpatialPoint(double x, double y, double z) : x_(x), y_(y), z_(z), a_(0.5 * y, 0.5 * x) {}
    explicit SpatialPoint(const Vec3& v) : SpatialPoint(v.x, v.y, v.z) {}

    double x() const { return x_; }
    double y() const { return y_; }
    double z() const { return z_; }
    cplx a() const { return a_; }
    double radius() const;
    Vec3 vec() const { return {x_, y_, z_}; }

private:
    double x_;
    double y_;
    double z_;
    cplx a_;
};

/// An oriented line in (w, u) coordinates: w is the direction on the Riemann
/// sphere (w = 0 is the +Z direction, w = infinity the -Z direction) and u the
/// fibre coordinate.
struct TwistorPoint {
    cplx w;
    cplx u;
};

/// Orientation reversal sigma(w) = -1/conj(w).
cplx sigma_w(cplx w);
/// Orientation reversal sigma(w, u) = (-1/conj(w), conj(u)).
TwistorPoint sigma(const TwistorPoint& t);

enum class RegionTag { W0, WInfinity, GammaCurve, OffPlane };
const char* to_string(RegionTag tag);

enum class CirclePosition { Inside, On, Outside };
const char* to_string(CirclePosition pos);

enum class Orientation : int { Positive = 1, Negative = -1 };

inline constexpr double kGammaTolerance = 1e-9;
inline constexpr double kOnCircleTolerance = 1e-9;

/// Q(w) = 1 + (eps/2)(w^2 + w^-2). Throws DomainError for w = 0.
cplx q_of_w(cplx w, double eps);

/// u = A w + Z - conj(A)/w: the fibre coordinate of the line through p with
/// direction w. Throws DomainError for w = 0.
cplx incidence_u(const SpatialPoint& p, cplx w);

/// Ascending coefficients of the quartic w^2 (Q(w) + u(w)^2).
std::array<cplx, 5> incidence_quartic(const SpatialPoint& p, double eps);

/// Delta = (1 - eps^2) - 4(|A|^2 + eps Re A^2); positive strictly inside the
/// ellipse, zero on it, negative outside. Independent of Z.
double discriminant(const SpatialPoint& p, double eps);

RegionTag classify_point(const SpatialPoint& p, double eps, double tol = kGammaTolerance);

struct SigmaRoot {
    cplx w;
    CirclePosition position = CirclePosition::On;
    int antipode = -1;       // index of the root nearest -w when within tolerance
    int sigma_partner = -1;  // index of the root nearest sigma(w) when within tolerance
};

struct SigmaRootSet {
    double delta = 0.0;
    std::vector<SigmaRoot> roots;
    bool degenerate = false;
    // Ascending coefficients of the polynomial whose roots are listed: the
    // quartic, or the reduced quadratic/constant in the degenerate case.
    std::vector<cplx> polynomial;
};

/// Roots in w of Q(w) + u(w)^2 = 0. When A^2 + eps/2 vanishes two roots
/// escape to 0 and infinity; the set is then flagged degenerate and holds the
/// remaining finite nonzero roots.
SigmaRootSet sigma_roots(const SpatialPoint& p, double eps, double pair_tol = 1e-8,
                         double circle_tol = kOnCircleTolerance);

/// Minimum over an equispaced theta grid of the distance from u/sqrt(Q) to
/// the arctan cuts. Strictly positive off the closure of the outer region.
double contour_safety_margin(const SpatialPoint& p, double eps, int nodes = 4096);

struct GaussMapSample {
    double theta = 0.0;       // ellipse parameter of the tangency point
    Orientation orientation = Orientation::Positive;
    double line_angle = 0.0;  // angle between the oriented tangent line and the Y axis
    TwistorPoint image;
    double tangent_distance = 0.0;
};

/// The oriented tangent line at (a cos theta, b sin theta, 0) as a point of
/// twistor space. Positive orientation follows increasing theta.
GaussMapSample gauss_map(double theta, Orientation orientation, double eps);

/// Distance from the origin to the tangent line of the ellipse making angle
/// `theta_line` with the Y axis, found from the tangency point.
double tangent_distance(double theta_line, double eps);

/// Twistor coordinates of the oriented line through `point_on_line` with
/// direction `direction` (normalized internally). Uses the chart
/// w = (d_y - i d_x)/(1 + d_z); throws DomainError when the direction is
/// within 1e-12 of the Z axis (w = 0 or infinity).
TwistorPoint line_to_twistor(const SpatialPoint& point_on_line, const Vec3& direction);

}  // namespace twistor
