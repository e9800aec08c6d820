#include "twistor/verify.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>
#include <sstream>

#include <json.hpp>

namespace twistor {

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

void VerificationReport::add(std::string name, double measured, double tolerance) {
    add(std::move(name), measured, tolerance, measured <= tolerance);
}

void VerificationReport::add(std::string name, double measured, double tolerance, bool pass) {
    checks.push_back({std::move(name), measured, tolerance, pass && !std::isnan(measured)});
}

bool VerificationReport::overall() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

namespace {

std::string shortest(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace

std::string to_text(const std::vector<VerificationReport>& reports) {
    std::string out;
    for (const auto& r : reports) {
        for (const auto& c : r.checks) {
            out += (c.pass ? "PASS " : "FAIL ") + r.suite_name + " " + c.name + " measured=" +
                   shortest(c.measured) + " tolerance=" + shortest(c.tolerance) + "\n";
        }
    }
    return out;
}

std::string to_json(const std::vector<VerificationReport>& reports, double eps, double kappa) {
    using nlohmann::ordered_json;
    ordered_json root;
    root["eps"] = eps;
    root["kappa"] = kappa;
    bool overall = true;
    ordered_json suites = ordered_json::array();
    for (const auto& r : reports) {
        ordered_json s;
        s["suite"] = r.suite_name;
        s["seed"] = r.seed;
        s["overall"] = r.overall();
        ordered_json checks = ordered_json::array();
        for (const auto& c : r.checks) {
            ordered_json row;
            row["suite"] = r.suite_name;
            row["check"] = c.name;
            // Non-finite values serialize as null.
            row["measured"] = c.measured;
            row["tolerance"] = c.tolerance;
            row["pass"] = c.pass;
            checks.push_back(std::move(row));
        }
        s["checks"] = std::move(checks);
        overall = overall && r.overall();
        suites.push_back(std::move(s));
    }
    root["overall"] = overall;
    root["suites"] = std::move(suites);
    return root.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Residues
// ---------------------------------------------------------------------------

namespace {

cplx int_power(cplx w, int n) {
    cplx r{1.0, 0.0};
    for (int i = 0; i < n; ++i) r *= w;
    return r;
}

}  // namespace

cplx omega_residue(std::span<const cplx> roots, cplx leading, std::size_t i, int k) {
    // Omega_k = w^{k+4} / P(w)^2 dw with P = leading * prod (w - r_j). At the
    // double pole r_i the residue is g'(r_i) for g = w^{k+4} / (leading^2
    // prod_{j != i} (w - r_j)^2), i.e. g(r_i) * [(k+4)/r_i - 2 sum 1/(r_i - r_j)].
    const cplx r = roots[i];
    cplx cofactor = leading * leading;
    cplx log_derivative = static_cast<double>(k + 4) / r;
    for (std::size_t j = 0; j < roots.size(); ++j) {
        if (j == i) continue;
        cofactor *= (r - roots[j]) * (r - roots[j]);
        log_derivative -= 2.0 / (r - roots[j]);
    }
    return int_power(r, k + 4) / cofactor * log_derivative;
}

cplx omega_residue_contour(std::span<const cplx> quartic, cplx root, int k, double radius, int nodes) {
    cplx sum{0.0, 0.0};
    for (int j = 0; j < nodes; ++j) {
        const cplx offset = std::polar(radius, kTwoPi * j / nodes);
        const cplx w = root + offset;
        const cplx p = eval_poly(quartic, w);
        sum += int_power(w, k + 4) / (p * p) * offset;
    }
    return sum / static_cast<double>(nodes);
}

namespace {

struct OrderedRoots {
    std::vector<cplx> roots;  // w1, sigma(w1), w2, sigma(w2)
    cplx leading;
    std::vector<cplx> quartic;
    bool classification_agrees = true;
};

OrderedRoots ordered_roots(const SpatialPoint& p, double eps) {
    const auto set = sigma_roots(p, eps, 1e-6);
    if (set.degenerate || set.roots.size() != 4) {
        throw DomainError("residue_cancellation: degenerate root set near the base point");
    }
    std::vector<int> outside;
    OrderedRoots out;
    for (std::size_t i = 0; i < set.roots.size(); ++i) {
        const auto& r = set.roots[i];
        if (r.position == CirclePosition::On) {
            throw DomainError("residue_cancellation: root-pairing ambiguity (root on the unit circle)");
        }
        const bool is_outside = std::abs(r.w) > 1.0;
        if (is_outside != (r.position == CirclePosition::Outside)) out.classification_agrees = false;
        if (is_outside) outside.push_back(static_cast<int>(i));
    }
    if (outside.size() != 2) {
        throw DomainError("residue_cancellation: root-pairing ambiguity (expected two roots outside the circle)");
    }
    std::sort(outside.begin(), outside.end(),
              [&](int l, int r) { return std::arg(set.roots[l].w) < std::arg(set.roots[r].w); });
    for (int i : outside) {
        const int partner = set.roots[i].sigma_partner;
        if (partner < 0 || set.roots[partner].position != CirclePosition::Inside) {
            throw DomainError("residue_cancellation: root-pairing ambiguity (no sigma partner)");
        }
        out.roots.push_back(set.roots[i].w);
        out.roots.push_back(set.roots[partner].w);
    }
    out.quartic = set.polynomial;
    out.leading = set.polynomial.back();
    return out;
}

}  // namespace

std::vector<ResidueReport> residue_cancellation(const Vec3& p0, double eps,
                                                const std::vector<double>& approach_deltas,
                                                const QuadratureConfig& quad) {
    const SpatialPoint base(p0);
    if (classify_point(base, eps) != RegionTag::WInfinity) {
        throw DomainError("residue_cancellation: base point must lie on the outer wall");
    }
    std::vector<double> deltas = approach_deltas;
    if (deltas.empty()) {
        // Root motion scales with the minor semi-axis.
        const auto e = EllipseConfig::from_eps(eps);
        for (int k = 0; k < 8; ++k) deltas.push_back(std::ldexp(0.1 * std::min(e.a, e.b), -k));
    }
    const FieldContext derivs = FieldContext::with_kappa(eps, 0.0, quad);

    // At p0 itself all four roots are on the circle in antipodal pairs.
    const auto at_base = sigma_roots(base, eps, 1e-6);
    std::vector<cplx> base_roots;
    for (const auto& r : at_base.roots) base_roots.push_back(r.w);

    std::vector<ResidueReport> reports;
    for (int k : {-3, -1, 1}) {
        ResidueReport rep;
        rep.base_point = p0;
        rep.eps = eps;
        rep.k = k;
        rep.deltas = deltas;
        for (std::size_t i = 0; i < at_base.roots.size(); ++i) {
            const int anti = at_base.roots[i].antipode;
            if (anti < 0) {
                rep.antipodal_residue_gap = std::numeric_limits<double>::infinity();
                continue;
            }
            const cplx lead = at_base.polynomial.back();
            rep.antipodal_residue_gap =
                std::max(rep.antipodal_residue_gap, std::abs(omega_residue(base_roots, lead, i, k) -
                                                             omega_residue(base_roots, lead, anti, k)));
        }
        for (double delta : deltas) {
            const SpatialPoint p(p0.x, p0.y, p0.z + delta);
            const auto ordered = ordered_roots(p, eps);
            rep.classification_agrees = rep.classification_agrees && ordered.classification_agrees;
            std::vector<cplx> res(4);
            for (std::size_t i = 0; i < 4; ++i) {
                res[i] = omega_residue(ordered.roots, ordered.leading, i, k);
                const cplx by_contour = omega_residue_contour(ordered.quartic, ordered.roots[i], k);
                rep.contour_residue_gap =
                    std::max(rep.contour_residue_gap, std::abs(res[i] - by_contour) / std::max(1.0, std::abs(res[i])));
            }
            rep.pair_sums.push_back(res[0] + res[2]);
            const cplx inside = res[1] + res[3];

            // (2/pi i) * contour of Omega_k = 4 * mean of w^{k+1}/(Q+u^2)^2.
            const auto quad_value = integrate_circle(
                [&](double theta) {
                    const cplx w = std::polar(1.0, theta);
                    const cplx d = q_of_w(w, eps) + std::pow(incidence_u(p, w), 2);
                    const cplx wk = k + 1 >= 0 ? int_power(w, k + 1) : int_power(std::conj(w), -(k + 1));
                    return 4.0 * wk / (d * d);
                },
                quad);
            rep.quadrature_gap = std::max(rep.quadrature_gap, std::abs(4.0 * inside - quad_value.value));
            if (k == -1) {
                const auto third = phi_third_derivs(p, derivs);
                rep.mixed_derivative_gap =
                    std::max(rep.mixed_derivative_gap, std::abs(-4.0 * inside - third.phi_zaabar));
            }
            rep.roots = ordered.roots;
            rep.residues = res;
        }
        rep.extrapolated_pair_sum = extrapolate_to_zero(rep.deltas, rep.pair_sums, 4);
        reports.push_back(std::move(rep));
    }
    return reports;
}

// ---------------------------------------------------------------------------
// Laplacian and growth
// ---------------------------------------------------------------------------

double laplacian_residual(const ScalarField& field, const SpatialPoint& p, double h) {
    const double x = p.x(), y = p.y(), z = p.z();
    const double sum = field({x + h, y, z}) + field({x - h, y, z}) + field({x, y + h, z}) +
                       field({x, y - h, z}) + field({x, y, z + h}) + field({x, y, z - h});
    return (sum - 6.0 * field(p)) / (h * h);
}

double laplacian_residual(const SpatialPoint& p, const FieldContext& ctx, double h) {
    const double reach = 2.0 * h;
    if (std::abs(p.z()) <= reach) {
        constexpr int kRing = 16;
        for (int j = 0; j <= kRing; ++j) {
            const double r = j == kRing ? 0.0 : reach;
            const SpatialPoint q(p.x() + r * std::cos(kTwoPi * j / kRing), p.y() + r * std::sin(kTwoPi * j / kRing), 0.0);
            if (discriminant(q, ctx.eps()) <= kGammaTolerance) {
                throw WallError("laplacian_residual: stencil crosses the outer wall");
            }
        }
    }
    return laplacian_residual([&](const SpatialPoint& q) { return phi(q, ctx).phi; }, p, h);
}

double blow_up_factor(const std::function<double(double)>& magnitude, const std::vector<double>& distances) {
    if (distances.empty()) return 0.0;
    const double first = magnitude(distances.front());
    double peak = first;
    for (double d : distances) peak = std::max(peak, magnitude(d));
    return peak / first;
}

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

namespace {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    // Portable uniform in [lo, hi): 53 random bits, independent of the
    // standard library's distribution implementation.
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

private:
    std::mt19937_64 engine_;
};

std::string point_label(double x, double y, double z) {
    return "(" + shortest(x) + "," + shortest(y) + "," + shortest(z) + ")";
}

void require_eps(double eps, const FieldContext& ctx) {
    if (eps != ctx.eps()) throw ConfigError("suite eps does not match the field context");
}

}  // namespace

VerificationReport matching_suite(double eps, const FieldContext& ctx, std::uint64_t seed) {
    require_eps(eps, ctx);
    VerificationReport rep{"matching", seed, {}};
    const auto& e = ctx.ellipse;

    // Neumann side: phi_Z -> 0 from above on the outer wall.
    const double outer_scale[] = {1.2, 1.5, 2.0};
    for (int j = 0; j < 10; ++j) {
        const double s = outer_scale[j % 3];
        const double t = kTwoPi * j / 10.0 + 0.3;
        const double x = s * e.a * std::cos(t), y = s * e.b * std::sin(t);
        const auto lim = phi_z_wall_limit(x, y, ctx);
        rep.add("phi_z_wall_limit" + point_label(x, y, 0.0), std::abs(lim.limit), 1e-4, lim.converged);
    }

    // Dirichlet side: phi vanishes on the inner disc and is odd across it.
    const double inner_scale[] = {0.3, 0.6, 0.85};
    for (int j = 0; j < 10; ++j) {
        const double s = inner_scale[j % 3];
        const double t = kTwoPi * j / 10.0 + 0.1;
        const double x = s * e.a * std::cos(t), y = s * e.b * std::sin(t);
        const std::string label = point_label(x, y, 0.0);
        rep.add("phi_zero_on_inner_disc" + label, std::abs(phi(SpatialPoint(x, y, 0.0), ctx).phi), 0.0);
        std::vector<double> deltas, above;
        double odd_gap = 0.0;
        for (int k = 0; k < 5; ++k) {
            const double d = std::ldexp(1e-2, -k);
            const double up = phi(SpatialPoint(x, y, d), ctx).phi;
            const double down = phi(SpatialPoint(x, y, -d), ctx).phi;
            deltas.push_back(d);
            above.push_back(up);
            odd_gap = std::max(odd_gap, std::abs(up + down));
        }
        rep.add("phi_odd_across_inner_disc" + label, odd_gap, 1e-12);
        rep.add("phi_limit_from_above" + label, std::abs(extrapolate_to_zero(deltas, above, 4)), 1e-8);
    }

    // Reflection symmetries at random points.
    Rng rng(seed);
    double gap_x = 0.0, gap_y = 0.0, gap_z = 0.0;
    for (int j = 0; j < 50; ++j) {
        const double x = rng.uniform(-2.0, 2.0), y = rng.uniform(-2.0, 2.0);
        double z = rng.uniform(0.05, 1.5);
        if (rng.uniform(0.0, 1.0) < 0.5) z = -z;
        const double base = phi(SpatialPoint(x, y, z), ctx).phi;
        const double scale = std::max(1.0, std::abs(base));
        gap_x = std::max(gap_x, std::abs(phi(SpatialPoint(-x, y, z), ctx).phi - base) / scale);
        gap_y = std::max(gap_y, std::abs(phi(SpatialPoint(x, -y, z), ctx).phi - base) / scale);
        gap_z = std::max(gap_z, std::abs(phi(SpatialPoint(x, y, -z), ctx).phi + base) / scale);
    }
    rep.add("symmetry_even_in_x", gap_x, 1e-11);
    rep.add("symmetry_even_in_y", gap_y, 1e-11);
    rep.add("symmetry_odd_in_z", gap_z, 1e-11);
    return rep;
}

VerificationReport gradient_scan(double eps, const FieldContext& ctx, const std::vector<double>& distances) {
    require_eps(eps, ctx);
    VerificationReport rep{"gradient", kDefaultSeed, {}};
    std::vector<double> dists = distances;
    if (dists.empty()) {
        for (int k = 1; k <= 10; ++k) dists.push_back(std::ldexp(1.0, -k));
    }
    const auto& e = ctx.ellipse;
    struct Path {
        const char* name;
        double reach;  // in-plane paths must not pass the centre
        std::function<SpatialPoint(double)> at;
    };
    const double inf = std::numeric_limits<double>::infinity();
    const Path paths[] = {
        {"inner_x_axis", e.a, [&](double d) { return SpatialPoint(e.a - d, 0.0, 0.0); }},
        {"inner_y_axis", e.b, [&](double d) { return SpatialPoint(0.0, e.b - d, 0.0); }},
        {"above_x_vertex", inf, [&](double d) { return SpatialPoint(e.a, 0.0, d); }},
        {"above_y_vertex", inf, [&](double d) { return SpatialPoint(0.0, e.b, d); }},
    };
    for (const auto& path : paths) {
        std::vector<double> scan;
        for (double d : dists) {
            if (d < path.reach) scan.push_back(d);
        }
        bool ok = true;
        auto magnitude = [&](double d) {
            try {
                const SpatialPoint p = path.at(d);
                const auto z = phi_z(p, ctx);
                const auto a = phi_a(p, ctx);
                ok = ok && z.converged && a.converged;
                return std::max(std::abs(z.value), std::abs(a.value));
            } catch (const Error&) {
                ok = false;
                return std::numeric_limits<double>::quiet_NaN();
            }
        };
        const double factor = blow_up_factor(magnitude, scan);
        rep.add(std::string("blow_up_factor_") + path.name, factor, 10.0, ok);
    }
    return rep;
}

VerificationReport harmonic_suite(double eps, const FieldContext& ctx, std::uint64_t seed, int points) {
    require_eps(eps, ctx);
    VerificationReport rep{"harmonic", seed, {}};
    Rng rng(seed ^ 0x4a52ULL);
    for (int j = 0; j < points; ++j) {
        const double x = rng.uniform(-1.8, 1.8), y = rng.uniform(-1.8, 1.8);
        double z = rng.uniform(0.25, 1.5);
        if (rng.uniform(0.0, 1.0) < 0.5) z = -z;
        const SpatialPoint p(x, y, z);
        const double coarse = laplacian_residual(p, ctx, 1e-2);
        const double fine = laplacian_residual(p, ctx, 5e-3);
        const double ratio = coarse / fine;
        rep.add("fd_laplacian_order" + point_label(x, y, z), std::abs(ratio - 4.0), 0.5);
    }
    return rep;
}

VerificationReport residue_suite(double eps, const QuadratureConfig& quad) {
    VerificationReport rep{"residue", kDefaultSeed, {}};
    const auto e = EllipseConfig::from_eps(eps);
    const Vec3 bases[] = {{1.5 * e.a, 0.0, 0.0},
                          {0.0, 1.5 * e.b, 0.0},
                          {1.3 * e.a * std::cos(1.0), 1.3 * e.b * std::sin(1.0), 0.0}};
    for (const auto& b : bases) {
        for (const auto& r : residue_cancellation(b, eps, {}, quad)) {
            const std::string tag = point_label(b.x, b.y, b.z) + "[k=" + std::to_string(r.k) + "]";
            rep.add("pair_sum_limit" + tag, std::abs(r.extrapolated_pair_sum), 1e-8);
            const double s0 = std::abs(r.pair_sums[0]), s1 = std::abs(r.pair_sums[1]), s2 = std::abs(r.pair_sums[2]);
            const double rise = std::max(s1 - s0, s2 - s1);
            rep.add("pair_sum_decreasing" + tag, rise, 0.0, rise < 0.0);
            rep.add("inside_outside_agrees" + tag, r.classification_agrees ? 0.0 : 1.0, 0.0);
            rep.add("residue_vs_small_circle" + tag, r.contour_residue_gap, 1e-8);
            rep.add("inside_residues_vs_quadrature" + tag, r.quadrature_gap, 1e-6);
            rep.add("antipodal_residues_equal" + tag, r.antipodal_residue_gap, 1e-8);
            if (r.k == -1) rep.add("mixed_derivative_vs_residues" + tag, r.mixed_derivative_gap, 1e-6);
        }
    }
    return rep;
}

VerificationReport asymptotic_suite(double eps, const FieldContext& ctx) {
    require_eps(eps, ctx);
    VerificationReport rep{"asymptotic", kDefaultSeed, {}};
    const auto coeffs = coefficients(eps, ctx.quad);
    const std::vector<double> radii{10.0, 50.0, 100.0};
    const Vec3 directions[] = {{1, 1, 1}, {1, -1, 1}, {1, 0, 1}, {0, 1, 1}, {0, 0, 1}, {2, 1, -1}};
    for (const auto& d : directions) {
        const auto samples = asymptotic_residual(d, radii, ctx, coeffs);
        const double first = std::abs(samples.front().residual_over_r);
        const double last = std::abs(samples.back().residual_over_r);
        const std::string tag = point_label(d.x, d.y, d.z);
        rep.add("residual_over_r_bounded" + tag, last, 2.0 * first);
        for (double rho : {2.0, 5.0}) {
            const double rescaled = std::abs(rescaled_residual_over_r(d, 10.0, rho, ctx, coeffs));
            rep.add("rescaled_residual_bounded" + tag + "[rho=" + shortest(rho) + "]", rescaled, 2.0 * first);
        }
    }
    if (eps == 0.0) {
        double gap = 0.0;
        for (double r : radii) {
            gap = std::max(gap, std::abs(phi(SpatialPoint(0.0, 0.0, r), ctx).phi - radial_closed_form(r)));
        }
        rep.add("z_axis_matches_radial_closed_form", gap, 1e-8);
    }
    return rep;
}

VerificationReport geometry_suite(double eps, std::uint64_t seed) {
    VerificationReport rep{"geometry", seed, {}};
    const auto e = EllipseConfig::from_eps(eps);
    Rng rng(seed ^ 0x9e0ULL);

    auto closure_gap = [](const SigmaRootSet& set, auto&& map) {
        double gap = 0.0;
        for (const auto& r : set.roots) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& s : set.roots) best = std::min(best, std::abs(map(r.w) - s.w));
            gap = std::max(gap, best);
        }
        return gap;
    };
    auto negate = [](cplx w) { return -w; };

    double modulus_gap = 0.0, antipodal_gap = 0.0, sigma_gap = 0.0;
    int root_count_failures = 0;
    for (int j = 0; j < 100; ++j) {
        const double s = rng.uniform(1.05, 3.0), t = rng.uniform(0.0, kTwoPi);
        const auto set = sigma_roots(SpatialPoint(s * e.a * std::cos(t), s * e.b * std::sin(t), 0.0), eps);
        if (set.roots.size() != 4) ++root_count_failures;
        for (const auto& r : set.roots) modulus_gap = std::max(modulus_gap, std::abs(std::abs(r.w) - 1.0));
        antipodal_gap = std::max(antipodal_gap, closure_gap(set, negate));
        sigma_gap = std::max(sigma_gap, closure_gap(set, sigma_w));
    }
    rep.add("outer_roots_count", root_count_failures, 0.0);
    rep.add("outer_roots_on_unit_circle", modulus_gap, 1e-10);
    rep.add("outer_roots_antipodal_closure", antipodal_gap, 1e-10);
    rep.add("outer_roots_sigma_closure", sigma_gap, 1e-10);

    double off_plane_sigma = 0.0;
    for (int j = 0; j < 100; ++j) {
        const SpatialPoint p(rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-2, 2));
        off_plane_sigma = std::max(off_plane_sigma, closure_gap(sigma_roots(p, eps), sigma_w));
    }
    rep.add("real_points_sigma_closure", off_plane_sigma, 1e-10);

    double inner_min_gap = std::numeric_limits<double>::infinity();
    int inner_tested = 0;
    // Delta peaks at 1 - eps^2 (the centre), so the margin shrinks for thin ellipses.
    const double inner_margin = std::min(0.1, 0.5 * (1.0 - eps * eps));
    while (inner_tested < 100) {
        const SpatialPoint p(rng.uniform(-e.a, e.a), rng.uniform(-e.b, e.b), 0.0);
        if (discriminant(p, eps) < inner_margin) continue;
        ++inner_tested;
        for (const auto& r : sigma_roots(p, eps).roots) {
            inner_min_gap = std::min(inner_min_gap, std::abs(std::abs(r.w) - 1.0));
        }
    }
    rep.add("inner_roots_off_unit_circle", inner_min_gap, 1e-6, inner_min_gap > 1e-6);

    int mismatches = 0;
    for (int j = 0; j < 1000; ++j) {
        const SpatialPoint p(rng.uniform(-2.5, 2.5), rng.uniform(-2.5, 2.5), 0.0);
        const double level = p.x() * p.x() / (e.a * e.a) + p.y() * p.y() / (e.b * e.b) - 1.0;
        if (std::abs(level) < 1e-6) continue;
        const RegionTag expected = level < 0.0 ? RegionTag::W0 : RegionTag::WInfinity;
        if (classify_point(p, eps) != expected) ++mismatches;
    }
    rep.add("discriminant_sign_matches_ellipse", mismatches, 0.0);

    double incidence = 0.0, unit = 0.0, reversal = 0.0;
    for (int j = 0; j < 64; ++j) {
        const double t = kTwoPi * j / 64.0;
        const auto plus = gauss_map(t, Orientation::Positive, eps);
        const auto minus = gauss_map(t, Orientation::Negative, eps);
        for (const auto& g : {plus, minus}) {
            incidence = std::max(incidence, std::abs(q_of_w(g.image.w, eps) + g.image.u * g.image.u));
            unit = std::max(unit, std::abs(std::abs(g.image.w) - 1.0));
        }
        const auto flipped = sigma(plus.image);
        reversal = std::max(reversal, std::abs(flipped.w - minus.image.w) + std::abs(flipped.u - minus.image.u));
    }
    rep.add("gauss_map_on_curve", incidence, 1e-10);
    rep.add("gauss_map_unit_circle", unit, 1e-12);
    rep.add("gauss_map_orientation_is_sigma", reversal, 1e-12);

    double tangent = 0.0;
    for (int j = 0; j < 256; ++j) {
        const double th = kTwoPi * j / 256.0;
        const double p = tangent_distance(th, eps);
        tangent = std::max(tangent, std::abs(p * p - (1.0 + eps * std::cos(2.0 * th))));
    }
    rep.add("tangent_distance_identity", tangent, 1e-12);
    return rep;
}

VerificationReport coeffs_suite(double eps, const FieldContext& ctx) {
    require_eps(eps, ctx);
    VerificationReport rep{"coeffs", kDefaultSeed, {}};
    const auto& quad = ctx.quad;
    const auto c = coefficients(eps, quad);
    const auto mirror = coefficients(-eps, quad);
    rep.add("lambda_plus_mu_minus_nu", c.identity_residual, 1e-10);
    rep.add("positive_coefficients", std::min({c.lambda, c.mu, c.nu}), 0.0, std::min({c.lambda, c.mu, c.nu}) > 0.0);
    rep.add("lambda_mirror_equals_mu", std::abs(mirror.lambda - c.mu), 1e-10);
    rep.add("nu_even_in_eps", std::abs(mirror.nu - c.nu), 1e-10);
    rep.add("varpi_reflection", std::abs(c.varpi + mirror.varpi - 1.0), 1e-10);

    std::vector<double> grid;
    for (int j = 0; j <= 20; ++j) grid.push_back(-0.95 + 0.095 * j);
    const auto curve = varpi_curve(grid, quad);
    double max_step = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 1; j < curve.size(); ++j) max_step = std::max(max_step, curve[j].varpi - curve[j - 1].varpi);
    rep.add("varpi_strictly_decreasing", max_step, 0.0, max_step < 0.0);
    rep.add("varpi_at_zero", std::abs(coefficients(0.0, quad).varpi - 0.5), 1e-10);
    rep.add("varpi_near_minus_one", curve.front().varpi, 0.9, curve.front().varpi > 0.9);
    rep.add("varpi_near_plus_one", curve.back().varpi, 0.1, curve.back().varpi < 0.1);

    for (double alpha : {1.0, 1.5}) {
        for (double eta : {0.5, 1.0, 2.0}) {
            const auto m = monotonicity_probe(eta, alpha, {}, 1e-4, quad);
            const std::string tag = "[alpha=" + shortest(alpha) + ",eta=" + shortest(eta) + "]";
            rep.add("monotonicity_identity" + tag, m.identity_residual, 1e-6);
            rep.add("cauchy_schwarz_gap_positive" + tag, m.cs_gap, 0.0, m.cs_gap > 0.0);
        }
    }

    // Growth near eps -> 1: nu grows no faster than (1-eps)^-2 and lambda
    // (equivalently mu as eps -> -1) only logarithmically.
    const double nu_slope = growth_slope([](const CoefficientSet& s) { return s.nu; }, 0.95, 0.99, quad);
    rep.add("nu_growth_within_inverse_square", nu_slope, -2.5, nu_slope >= -2.5);
    const double log_slope = growth_slope([](const CoefficientSet& s) { return s.lambda; }, 0.9, 0.99, quad);
    rep.add("lambda_growth_logarithmic", std::abs(log_slope), 0.5);

    rep.add("kappa_probe_spread", ctx.calibration.spread, 1e-6, ctx.calibration.calibrated && ctx.calibration.spread <= 1e-6);
    if (eps == 0.0) rep.add("kappa_at_zero_is_one", std::abs(ctx.kappa - 1.0), 1e-6);
    return rep;
}

std::vector<VerificationReport> run_suites(const std::string& suite, const FieldContext& ctx, std::uint64_t seed) {
    const auto& names = suite_names();
    if (suite != "all" && std::find(names.begin(), names.end(), suite) == names.end()) {
        throw ConfigError("unknown suite '" + suite + "'");
    }
    const double eps = ctx.eps();
    std::vector<VerificationReport> out;
    for (const auto& name : names) {
        if (suite != "all" && suite != name) continue;
        if (name == "geometry") out.push_back(geometry_suite(eps, seed));
        else if (name == "coeffs") out.push_back(coeffs_suite(eps, ctx));
        else if (name == "residue") out.push_back(residue_suite(eps, ctx.quad));
        else if (name == "matching") out.push_back(matching_suite(eps, ctx, seed));
        else if (name == "harmonic") out.push_back(harmonic_suite(eps, ctx, seed));
        else if (name == "gradient") out.push_back(gradient_scan(eps, ctx));
        else if (name == "asymptotic") out.push_back(asymptotic_suite(eps, ctx));
    }
    return out;
}

}  // namespace twistor
