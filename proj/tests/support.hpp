#pragma once

// Hand-rolled generators for property tests.

#include <cstdint>
#include <random>

#include "twistor/geometry.hpp"

namespace twistor::testing {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }
    double sign() { return uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0; }
    cplx complex_in_box(double r) { return {uniform(-r, r), uniform(-r, r)}; }

    /// Point strictly off the plane, |Z| in [zmin, zmax].
    SpatialPoint off_plane(double xy, double zmin, double zmax) {
        const double x = uniform(-xy, xy), y = uniform(-xy, xy);
        return {x, y, sign() * uniform(zmin, zmax)};
    }
    /// Plane point (s a cos t, s b sin t, 0) with s in [smin, smax].
    SpatialPoint scaled_ellipse(const EllipseConfig& e, double smin, double smax) {
        const double s = uniform(smin, smax), t = uniform(0.0, kTwoPi);
        return {s * e.a * std::cos(t), s * e.b * std::sin(t), 0.0};
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace twistor::testing
