#include "twistor/numerics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace twistor {

double distance_to_arctan_cuts(cplx z) {
    const double x = z.real();
    const double y = std::abs(z.imag());
    if (y >= 1.0) return std::abs(x);
    return std::hypot(x, 1.0 - y);
}

cplx branch_arctan(cplx z, double cut_tolerance) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw DomainError("branch_arctan: non-finite argument");
    }
    if (distance_to_arctan_cuts(z) < cut_tolerance) {
        throw DomainError("branch_arctan: argument within " + std::to_string(cut_tolerance) +
                          " of a branch cut");
    }
    const cplx i{0.0, 1.0};
    // The log of a ratio near 1 loses relative accuracy; use the odd series.
    if (std::abs(z) < 1e-3) {
        const cplx z2 = z * z;
        cplx term = z;
        cplx sum = z;
        for (int k = 1; k < 8; ++k) {
            term *= -z2;
            sum += term / static_cast<double>(2 * k + 1);
        }
        return sum;
    }
    return std::log((1.0 + i * z) / (1.0 - i * z)) / (2.0 * i);
}

void QuadratureConfig::validate() const {
    if (initial_nodes < 8 || !std::has_single_bit(static_cast<unsigned>(initial_nodes))) {
        throw ConfigError("quadrature: initial_nodes must be a power of two >= 8");
    }
    if (max_nodes < initial_nodes) {
        throw ConfigError("quadrature: max_nodes must be >= initial_nodes");
    }
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
        throw ConfigError("quadrature: tolerances must be positive");
    }
}

cplx eval_poly(std::span<const cplx> coeffs, cplx z) {
    cplx acc{0.0, 0.0};
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

namespace {

cplx eval_derivative(std::span<const cplx> coeffs, cplx z) {
    cplx acc{0.0, 0.0};
    for (std::size_t k = coeffs.size() - 1; k >= 1; --k) {
        acc = acc * z + static_cast<double>(k) * coeffs[k];
    }
    return acc;
}

std::vector<cplx> aberth(std::span<const cplx> c) {
    const int n = static_cast<int>(c.size()) - 1;
    // Initial guesses on a circle sized by the geometric mean of the roots.
    double radius = std::pow(std::abs(c[0]) / std::abs(c[n]), 1.0 / n);
    if (!(radius > 0.0) || !std::isfinite(radius)) radius = 1.0;
    std::vector<cplx> z(n);
    for (int k = 0; k < n; ++k) {
        z[k] = std::polar(radius, kTwoPi * k / n + 0.4);
    }
    for (int iter = 0; iter < 500; ++iter) {
        double max_step = 0.0;
        for (int k = 0; k < n; ++k) {
            const cplx p = eval_poly(c, z[k]);
            if (p == cplx{0.0, 0.0}) continue;
            const cplx ratio = p / eval_derivative(c, z[k]);
            cplx repulsion{0.0, 0.0};
            for (int j = 0; j < n; ++j) {
                if (j != k) repulsion += 1.0 / (z[k] - z[j]);
            }
            const cplx step = ratio / (1.0 - ratio * repulsion);
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
            z[k] -= step;
            max_step = std::max(max_step, std::abs(step) / std::max(1.0, std::abs(z[k])));
        }
        if (max_step < 1e-16) break;
    }
    return z;
}

void newton_polish(std::span<const cplx> c, cplx& z) {
    double residual = std::abs(eval_poly(c, z));
    for (int iter = 0; iter < 50 && residual > 0.0; ++iter) {
        const cplx d = eval_derivative(c, z);
        if (d == cplx{0.0, 0.0}) return;
        const cplx candidate = z - eval_poly(c, z) / d;
        const double r = std::abs(eval_poly(c, candidate));
        if (!(r < residual)) return;
        z = candidate;
        residual = r;
    }
}

}  // namespace

PolyRoots polynomial_roots(std::span<const cplx> coeffs, double degenerate_rel_tol) {
    PolyRoots out;
    out.coefficients.assign(coeffs.begin(), coeffs.end());
    double scale = 0.0;
    for (const cplx& c : coeffs) scale = std::max(scale, std::abs(c));
    if (coeffs.empty() || scale == 0.0) {
        throw DomainError("polynomial_roots: all coefficients are zero");
    }
    int degree = static_cast<int>(coeffs.size()) - 1;
    while (degree > 0 && std::abs(coeffs[degree]) <= degenerate_rel_tol * scale) --degree;
    out.degenerate = degree < static_cast<int>(coeffs.size()) - 1;
    out.effective_degree = degree;
    if (degree == 0) return out;

    const std::span<const cplx> reduced = coeffs.first(degree + 1);
    if (degree == 1) {
        out.roots = {-reduced[0] / reduced[1]};
    } else {
        out.roots = aberth(reduced);
    }
    for (cplx& z : out.roots) newton_polish(reduced, z);
    return out;
}

PolyRoots quartic_roots(const std::array<cplx, 5>& c, double degenerate_rel_tol) {
    return polynomial_roots(std::span<const cplx>(c), degenerate_rel_tol);
}

namespace {

template <class T>
T neville_at_zero(std::span<const double> h, std::span<const T> v, int points) {
    if (h.size() != v.size() || h.empty()) {
        throw DomainError("extrapolate_to_zero: mismatched or empty samples");
    }
    const int m = std::min<int>(points, static_cast<int>(h.size()));
    const std::size_t first = h.size() - m;
    std::vector<double> x(h.begin() + first, h.end());
    std::vector<T> p(v.begin() + first, v.end());
    for (int level = 1; level < m; ++level) {
        for (int i = 0; i + level < m; ++i) {
            // Interpolant through x[i..i+level] evaluated at 0.
            p[i] = (x[i + level] * p[i] - x[i] * p[i + 1]) / (x[i + level] - x[i]);
        }
    }
    return p[0];
}

}  // namespace

double extrapolate_to_zero(std::span<const double> h, std::span<const double> v, int points) {
    return neville_at_zero<double>(h, v, points);
}

cplx extrapolate_to_zero(std::span<const double> h, std::span<const cplx> v, int points) {
    return neville_at_zero<cplx>(h, v, points);
}

}  // namespace twistor
