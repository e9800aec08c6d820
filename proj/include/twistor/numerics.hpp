#pragma once

// Complex arctangent on the doubly cut plane, trapezoid quadrature on the
// unit circle, polynomial roots, and Richardson extrapolation.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "twistor/errors.hpp"

namespace twistor {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// ---------------------------------------------------------------------------
// Arctangent
// ---------------------------------------------------------------------------

inline constexpr double kDefaultCutTolerance = 1e-12;

/// Euclidean distance from z to the cut set {it : t real, |t| >= 1}.
double distance_to_arctan_cuts(cplx z);

/// Odd branch of arctan with arctan(0) = 0 and cuts from i to +i*inf and
/// from -i to -i*inf, computed as (1/2i) log((1 + iz)/(1 - iz)).
///
/// Throws DomainError when z lies within `cut_tolerance` of a cut, since the
/// value there depends on the side of approach.
cplx branch_arctan(cplx z, double cut_tolerance = kDefaultCutTolerance);

// ---------------------------------------------------------------------------
// Periodic quadrature
// ---------------------------------------------------------------------------

struct QuadratureConfig {
    int initial_nodes = 16;
    int max_nodes = 1 << 21;
    double rel_tol = 1e-13;
    double abs_tol = 1e-14;

    /// Throws ConfigError unless initial_nodes is a power of two >= 8,
    /// max_nodes >= initial_nodes and both tolerances are positive.
    void validate() const;
};

struct QuadratureResult {
    cplx value;
    double error_estimate = 0.0;
    int nodes_used = 0;
    bool converged = false;
};

/// Mean value (1/2pi) * integral over [0, 2pi) of f(theta) by the uniform
/// trapezoid rule. The node count doubles (reusing previous nodes) until two
/// successive estimates agree to max(abs_tol, rel_tol*scale) or max_nodes is
/// reached, where scale is the larger of |value| and the mean of |f| (so a
/// result small by cancellation is not held to an unreachable tolerance);
/// error_estimate is the last difference. Exceptions thrown by `f`
/// propagate.
template <class Integrand>
QuadratureResult integrate_circle(Integrand&& f, const QuadratureConfig& cfg) {
    cfg.validate();
    int n = cfg.initial_nodes;
    cplx sum{0.0, 0.0};
    double abs_sum = 0.0;
    for (int j = 0; j < n; ++j) {
        const cplx v = f(kTwoPi * j / n);
        sum += v;
        abs_sum += std::abs(v);
    }
    cplx previous = sum / static_cast<double>(n);
    QuadratureResult out{previous, std::numeric_limits<double>::infinity(), n, false};
    while (2 * n <= cfg.max_nodes) {
        cplx mid{0.0, 0.0};
        for (int j = 0; j < n; ++j) {
            const cplx v = f(kTwoPi * (j + 0.5) / n);
            mid += v;
            abs_sum += std::abs(v);
        }
        sum += mid;
        n *= 2;
        const cplx current = sum / static_cast<double>(n);
        const double diff = std::abs(current - previous);
        const double scale = std::max(std::abs(current), abs_sum / n);
        out = {current, diff, n, diff <= std::max(cfg.abs_tol, cfg.rel_tol * scale)};
        if (out.converged) break;
        previous = current;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Polynomial roots
// ---------------------------------------------------------------------------

struct PolyRoots {
    std::vector<cplx> coefficients;  // ascending degree, as supplied
    std::vector<cplx> roots;
    int effective_degree = 0;
    bool degenerate = false;  // leading coefficient(s) collapsed
};

/// Horner evaluation of sum c[k] z^k.
cplx eval_poly(std::span<const cplx> coeffs, cplx z);

/// Roots of sum c[k] z^k (ascending coefficients). Leading coefficients with
/// modulus <= degenerate_rel_tol * max|c| are dropped and the result flagged
/// degenerate. Roots come from Aberth iteration followed by Newton polishing.
/// Throws DomainError if every coefficient is zero.
PolyRoots polynomial_roots(std::span<const cplx> coeffs, double degenerate_rel_tol = 1e-14);

/// Roots of c0 + c1 w + c2 w^2 + c3 w^3 + c4 w^4.
PolyRoots quartic_roots(const std::array<cplx, 5>& c, double degenerate_rel_tol = 1e-14);

// ---------------------------------------------------------------------------
// Extrapolation
// ---------------------------------------------------------------------------

/// Value at h = 0 of the polynomial interpolating (h[i], v[i]) over the last
/// `points` samples (Neville). Expects h strictly decreasing toward 0.
double extrapolate_to_zero(std::span<const double> h, std::span<const double> v, int points = 3);
cplx extrapolate_to_zero(std::span<const double> h, std::span<const cplx> v, int points = 3);

}  // namespace twistor
