#pragma once

// Quadratic growth coefficients of the field at infinity:
//
//   phi_tilde = -lambda X^2 - mu Y^2 + nu Z^2 + O(R)
//
// with lambda, mu, nu the theta-integrals of cos^2, sin^2 and 1 against
// (1 + eps cos 2 theta)^{-3/2}/4, and the ratio varpi = lambda / nu.

#include <functional>
#include <vector>

#include "twistor/field.hpp"

namespace twistor {

struct CoefficientSet {
    double eps = 0.0;
    double lambda = 0.0;
    double mu = 0.0;
    double nu = 0.0;
    double varpi = 0.0;
    double identity_residual = 0.0;  // |lambda + mu - nu|
    bool converged = false;
};

/// Throws DomainError unless |eps| < 1.
CoefficientSet coefficients(double eps, const QuadratureConfig& quad = {});

struct VarpiPoint {
    double eps = 0.0;
    double varpi = 0.0;
};
std::vector<VarpiPoint> varpi_curve(const std::vector<double>& eps_grid, const QuadratureConfig& quad = {});

/// Moments behind the monotonicity of J/I, where
///   I(eta) = int (1 + eta f)^-alpha dtheta,  J(eta) = int f (1 + eta f)^-alpha dtheta,
///   dm = (1 + eta f)^-(1+alpha) dtheta,
/// and J I' - I J' = alpha [int f^2 dm int dm - (int f dm)^2].
struct MonotonicityProbe {
    double eta = 0.0;
    double alpha = 0.0;
    double i_val = 0.0;
    double j_val = 0.0;
    double d_i = 0.0;  // central finite differences in eta
    double d_j = 0.0;
    double m0 = 0.0;   // int dm
    double m1 = 0.0;   // int f dm
    double m2 = 0.0;   // int f^2 dm
    double cs_gap = 0.0;
    double lhs = 0.0;  // J dI - I dJ
    double rhs = 0.0;  // alpha * cs_gap
    double identity_residual = 0.0;
};

/// f defaults to cos^2(theta). `fd_step` is the finite-difference step in eta.
MonotonicityProbe monotonicity_probe(double eta, double alpha,
                                     const std::function<double(double)>& weight = {},
                                     double fd_step = 1e-4, const QuadratureConfig& quad = {});

struct AsymptoticSample {
    Vec3 direction;
    double radius = 0.0;
    double phi_tilde = 0.0;
    double residual_over_r = 0.0;  // (phi_tilde + lambda X^2 + mu Y^2 - nu Z^2)/R
};

/// -lambda X^2 - mu Y^2 + nu Z^2.
double quadratic_part(const CoefficientSet& c, const Vec3& p);

/// Samples the O(R) remainder along the ray R * direction (direction is
/// normalized). Throws WallError if a sample falls on the outer wall.
std::vector<AsymptoticSample> asymptotic_residual(const Vec3& direction, const std::vector<double>& radii,
                                                  const FieldContext& ctx, const CoefficientSet& coeffs);

/// (rho^-2 phi_tilde(rho p) - quadratic_part(p)) / R for p = R * direction:
/// the rescaled field keeps the same quadratic part.
double rescaled_residual_over_r(const Vec3& direction, double radius, double rho, const FieldContext& ctx,
                                const CoefficientSet& coeffs);

/// Log-log growth slope of a coefficient between two parameter values:
/// d log(value) / d log(1 - eps).
double growth_slope(double (*select)(const CoefficientSet&), double eps1, double eps2,
                    const QuadratureConfig& quad = {});

}  // namespace twistor
