#pragma once

// The multivalued harmonic function phi, its derivatives, and the
// calibration of the additive constant kappa.
//
// phi(p) = (1/2pi) * integral over theta of F(w, u) with w = e^{i theta},
// u = A w + Z - conj(A)/w = Z + i(X cos theta + Y sin theta), and
//
//     F(w, u) = Q^{-3/2} (Q + u^2) arctan(u / sqrt(Q)) + kappa u.
//
// On the unit circle Q = 1 + eps cos(2 theta) is real and >= 1 - |eps| > 0,
// so sqrt(Q) is the positive root.

#include <vector>

#include "twistor/geometry.hpp"
#include "twistor/numerics.hpp"

namespace twistor {

/// Diagnostics from calibrate_kappa: raw (kappa = 0) phi_Z values at each
/// probe and offset, their extrapolated limits, and the spread between probes.
struct CalibrationReport {
    std::vector<double> probe_scale;          // probes sit at (c * a, 0, delta)
    std::vector<double> deltas;
    std::vector<std::vector<double>> raw;     // raw[probe][delta]
    std::vector<double> extrapolated;         // per probe, delta -> 0
    double spread = 0.0;
    bool calibrated = false;
};

struct FieldContext {
    EllipseConfig ellipse;
    double kappa = 0.0;
    QuadratureConfig quad;
    CalibrationReport calibration;

    /// Context with a caller-supplied kappa and no calibration run.
    static FieldContext with_kappa(double eps, double kappa, const QuadratureConfig& quad = {});

    double eps() const { return ellipse.eps; }
};

template <class T>
struct Estimate {
    T value{};
    double error_estimate = 0.0;
    int nodes_used = 0;
    bool converged = false;
};

struct FieldValue {
    double phi = 0.0;
    double phi_tilde = 0.0;  // sign(Z) * phi
    double imag_part = 0.0;  // imaginary part of the raw integral
    double error_estimate = 0.0;
    int nodes_used = 0;
    bool converged = false;
    RegionTag region = RegionTag::OffPlane;
};

/// Third derivatives of phi. With the chain rule du/dA = w and
/// du/d(conj A) = -1/w, the mixed derivative phi_{Z A conj(A)} equals
/// -phi_ZZZ, which is the Laplace equation for phi_Z.
struct ThirdDerivatives {
    double phi_zzz = 0.0;
    cplx phi_zaa;
    cplx phi_zabarabar;
    cplx phi_zaabar;
    double error_estimate = 0.0;
    bool converged = false;
};

struct DerivativeBundle {
    double phi_z = 0.0;
    cplx phi_a;
    double phi_zzz = 0.0;
    cplx phi_zaa;
    cplx phi_zabarabar;
    cplx phi_zaabar;
    double error_estimate = 0.0;
    bool converged = false;
};

/// Cartesian gradient. From A = (Y + iX)/2: phi_A = phi_Y - i phi_X, so
/// phi_X = -Im phi_A and phi_Y = Re phi_A.
struct Gradient {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

/// F(w, u) for |w| = 1. Throws DomainError when u/sqrt(Q) is on an arctan cut.
cplx integrand_F(cplx w, cplx u, double eps, double kappa);

/// dF/du = 2 u Q^{-3/2} arctan(u/sqrt(Q)) + 1/Q + kappa.
cplx integrand_dF_du(cplx w, cplx u, double eps, double kappa);

/// Throws WallError when p is in the plane Z = 0 (|Z| <= 1e-9) on or outside
/// the ellipse (Delta <= 1e-9).
void require_off_wall(const SpatialPoint& p, double eps);

FieldValue phi(const SpatialPoint& p, const FieldContext& ctx);
Estimate<double> phi_z(const SpatialPoint& p, const FieldContext& ctx);
Estimate<cplx> phi_a(const SpatialPoint& p, const FieldContext& ctx);
Gradient gradient(const SpatialPoint& p, const FieldContext& ctx);
ThirdDerivatives phi_third_derivs(const SpatialPoint& p, const FieldContext& ctx);
DerivativeBundle derivatives(const SpatialPoint& p, const FieldContext& ctx);

/// (1 + Z^2) arctan(Z) + Z: phi on the Z axis for eps = 0, kappa = 1.
double radial_closed_form(double z);

struct CalibrationOptions {
    std::vector<double> probe_scale{1.5, 2.5};
    double delta0 = 1e-2;
    int delta_count = 7;           // delta_k = delta0 * 2^-k
    int extrapolation_points = 3;
    double eps_ceiling = 0.95;
    double spread_tolerance = 1e-5;
};

/// Picks kappa so that phi_Z vanishes on the outer wall: evaluates phi_Z with
/// kappa = 0 at (c a, 0, delta_k) for each probe scale c, extrapolates
/// delta -> 0, and sets kappa to minus the limit. Throws CalibrationError if
/// the probes disagree by more than spread_tolerance or quadrature fails, and
/// DomainError if |eps| exceeds eps_ceiling.
FieldContext calibrate_kappa(double eps, const QuadratureConfig& quad = {},
                             const CalibrationOptions& opts = {});

/// Samples phi_Z at (x, y, delta_k) and extrapolates delta -> 0+.
struct OneSidedLimit {
    std::vector<double> deltas;
    std::vector<double> values;
    double limit = 0.0;
    bool converged = true;
};
OneSidedLimit phi_z_wall_limit(double x, double y, const FieldContext& ctx, double delta0 = 1e-2,
                               int count = 7, int points = 3);

}  // namespace twistor
