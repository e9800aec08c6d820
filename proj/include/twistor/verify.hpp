#pragma once

// Executable checks: residue cancellation at the outer wall, finite
// difference harmonicity, wall matching, gradient boundedness near the
// ellipse, large-R asymptotics, geometry, and coefficient identities.
// Every suite returns a VerificationReport of (name, measured, tolerance,
// pass) rows and is deterministic given (eps, seed, quadrature settings).

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "twistor/asymptotics.hpp"
#include "twistor/field.hpp"

namespace twistor {

inline constexpr std::uint64_t kDefaultSeed = 0xD0A1D5011ULL;

struct Check {
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct VerificationReport {
    std::string suite_name;
    std::uint64_t seed = kDefaultSeed;
    std::vector<Check> checks;

    /// Adds a row passing when measured <= tolerance (NaN never passes).
    void add(std::string name, double measured, double tolerance);
    /// Adds a row with an externally decided verdict.
    void add(std::string name, double measured, double tolerance, bool pass);
    bool overall() const;
};

/// Line-oriented text: one "PASS|FAIL suite check measured tolerance" row each.
std::string to_text(const std::vector<VerificationReport>& reports);
/// JSON with stable key order; each check carries suite, check, measured,
/// tolerance and pass.
std::string to_json(const std::vector<VerificationReport>& reports, double eps, double kappa);

// ---------------------------------------------------------------------------
// Residues of Omega_k = (Q + u^2)^-2 w^k dw
// ---------------------------------------------------------------------------

struct ResidueReport {
    Vec3 base_point;
    double eps = 0.0;
    int k = 0;
    std::vector<double> deltas;
    std::vector<cplx> pair_sums;        // Res w1(p) + Res w2(p) at p = p0 + (0,0,delta)
    cplx extrapolated_pair_sum;
    // At the smallest delta, ordered w1, sigma(w1), w2, sigma(w2), with w1, w2
    // the roots outside the unit circle.
    std::vector<cplx> roots;
    std::vector<cplx> residues;
    bool classification_agrees = true;  // outside/inside matches sigma_roots flags at every delta
    double contour_residue_gap = 0.0;   // max |analytic - small-circle| residue
    double quadrature_gap = 0.0;        // max |4 * inside residue sum - (2/pi i) contour integral|
    double antipodal_residue_gap = 0.0; // max |Res(w) - Res(-w)| at p0 itself
    // k = -1 only: max |(-4) * inside sum - phi_{Z A conj(A)} by quadrature|.
    double mixed_derivative_gap = 0.0;
};

/// Residue of Omega_k at roots[i] of the quartic with leading coefficient
/// `leading`, computed by differentiating the cofactor of the double pole.
cplx omega_residue(std::span<const cplx> roots, cplx leading, std::size_t i, int k);

/// Same residue by a small circle of `radius` with `nodes` trapezoid nodes.
cplx omega_residue_contour(std::span<const cplx> quartic, cplx root, int k, double radius = 1e-3,
                           int nodes = 256);

/// For each k in {-3, -1, 1}: residues at the two roots outside the unit
/// circle as p approaches p0 (on the outer wall) from above. Throws
/// DomainError if p0 is not on the outer wall or the roots cannot be paired.
std::vector<ResidueReport> residue_cancellation(const Vec3& p0, double eps,
                                                const std::vector<double>& approach_deltas = {},
                                                const QuadratureConfig& quad = {});

// ---------------------------------------------------------------------------
// Harmonicity
// ---------------------------------------------------------------------------

using ScalarField = std::function<double(const SpatialPoint&)>;

/// 7-point finite-difference Laplacian of an arbitrary field.
double laplacian_residual(const ScalarField& field, const SpatialPoint& p, double h);

/// 7-point Laplacian of phi. Throws WallError if the ball of radius 2h about
/// p meets the closed outer wall.
double laplacian_residual(const SpatialPoint& p, const FieldContext& ctx, double h);

// ---------------------------------------------------------------------------
// Gradient growth
// ---------------------------------------------------------------------------

/// max over the scan of magnitude(d) divided by its value at the first
/// (largest) distance.
double blow_up_factor(const std::function<double(double)>& magnitude, const std::vector<double>& distances);

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

VerificationReport matching_suite(double eps, const FieldContext& ctx, std::uint64_t seed = kDefaultSeed);
VerificationReport gradient_scan(double eps, const FieldContext& ctx, const std::vector<double>& distances = {});
VerificationReport harmonic_suite(double eps, const FieldContext& ctx, std::uint64_t seed = kDefaultSeed,
                                  int points = 30);
VerificationReport residue_suite(double eps, const QuadratureConfig& quad = {});
VerificationReport asymptotic_suite(double eps, const FieldContext& ctx);
VerificationReport geometry_suite(double eps, std::uint64_t seed = kDefaultSeed);
VerificationReport coeffs_suite(double eps, const FieldContext& ctx);

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"geometry", "coeffs",   "residue",   "matching",
                                                "harmonic", "gradient", "asymptotic"};
    return names;
}

/// Runs `suite` ("all" or one of suite_names()) against a calibrated context.
/// Throws ConfigError for an unknown suite.
std::vector<VerificationReport> run_suites(const std::string& suite, const FieldContext& ctx,
                                           std::uint64_t seed = kDefaultSeed);

}  // namespace twistor
