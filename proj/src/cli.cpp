#include "twistor/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "twistor/asymptotics.hpp"

namespace twistor::cli {

using nlohmann::ordered_json;

void RunConfig::validate() const {
    if (!std::isfinite(eps) || std::abs(eps) >= 1.0) throw ConfigError("--eps must satisfy |eps| < 1");
    if (std::abs(eps) > 0.95 && !allow_extreme) {
        throw ConfigError("|eps| > 0.95 requires --allow-extreme");
    }
    if (precision < 0 || precision > 17) throw ConfigError("--precision must lie in [0, 17]");
    if (!format.empty() && format != "csv" && format != "json") {
        throw ConfigError("--format must be csv or json");
    }
    quad.validate();
}

std::string format_number(double v, int precision) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = precision == 0 ? std::to_chars(buf, buf + sizeof buf, v)
                                    : std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, precision);
    return std::string(buf, res.ptr);
}

namespace {

struct Ranges {
    double xmin = -2, xmax = 2, ymin = -2, ymax = 2, zmin = -1, zmax = 1;
    int nx = 21, ny = 21, nz = 11;
    int threads = 0;
};

void add_common(CLI::App* cmd, RunConfig& cfg, bool with_eps = true) {
    if (with_eps) cmd->add_option("--eps", cfg.eps, "Ellipse parameter, a^2 = 1 + eps, b^2 = 1 - eps")->required();
    cmd->add_option("--quad-initial", cfg.quad.initial_nodes, "Initial trapezoid node count (power of two)");
    cmd->add_option("--quad-max", cfg.quad.max_nodes, "Maximum trapezoid node count");
    cmd->add_option("--rel-tol", cfg.quad.rel_tol, "Quadrature relative tolerance");
    cmd->add_option("--abs-tol", cfg.quad.abs_tol, "Quadrature absolute tolerance");
    cmd->add_option("--format", cfg.format, "Output format: csv or json");
    cmd->add_option("--out", cfg.out_path, "Output file (default stdout)");
    cmd->add_option("--precision", cfg.precision, "Significant digits (0 = shortest round-trip)");
    cmd->add_flag("--allow-extreme", cfg.allow_extreme, "Permit 0.95 < |eps| < 1");
}

CalibrationOptions calibration_options(const RunConfig& cfg) {
    CalibrationOptions opts;
    if (cfg.allow_extreme) opts.eps_ceiling = 1.0;
    return opts;
}

std::vector<double> parse_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        double v = 0.0;
        const char* first = item.data();
        const char* last = item.data() + item.size();
        while (first < last && *first == ' ') ++first;
        const auto res = std::from_chars(first, last, v);
        if (res.ec != std::errc{} || res.ptr != last) {
            throw ConfigError(std::string("cannot parse ") + what + " '" + text + "'");
        }
        out.push_back(v);
    }
    if (out.empty()) throw ConfigError(std::string("empty ") + what);
    return out;
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
    if (cfg.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(cfg.out_path, std::ios::binary | std::ios::trunc);
    if (!file) throw ConfigError("cannot open '" + cfg.out_path + "' for writing");
    file << text;
    if (!file) throw ConfigError("failed writing '" + cfg.out_path + "'");
}

std::string csv(std::initializer_list<std::string> cells) {
    std::string line;
    for (const auto& c : cells) {
        if (!line.empty()) line += ',';
        line += c;
    }
    return line + "\n";
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

int run_eval(const RunConfig& cfg, const std::string& point_text, bool tilde, bool derivs, std::ostream& out) {
    const auto xyz = parse_list(point_text, "--point");
    if (xyz.size() != 3) throw ConfigError("--point expects X,Y,Z");
    const SpatialPoint p(xyz[0], xyz[1], xyz[2]);
    const auto ctx = calibrate_kappa(cfg.eps, cfg.quad, calibration_options(cfg));
    const auto v = phi(p, ctx);
    const int pr = cfg.precision;
    auto num = [pr](double x) { return format_number(x, pr); };

    if (cfg.format == "json") {
        ordered_json j;
        j["eps"] = cfg.eps;
        j["kappa"] = ctx.kappa;
        j["point"] = {p.x(), p.y(), p.z()};
        j["region"] = to_string(v.region);
        j["phi"] = v.phi;
        if (tilde) j["phi_tilde"] = v.phi_tilde;
        j["err"] = v.error_estimate;
        j["converged"] = v.converged;
        if (derivs) {
            const auto d = derivatives(p, ctx);
            auto c = [](cplx z) { return ordered_json::array({z.real(), z.imag()}); };
            j["derivatives"] = {{"phi_z", d.phi_z},           {"phi_a", c(d.phi_a)},
                                {"phi_zzz", d.phi_zzz},       {"phi_zaa", c(d.phi_zaa)},
                                {"phi_zabarabar", c(d.phi_zabarabar)}, {"phi_zaabar", c(d.phi_zaabar)}};
        }
        emit(cfg, j.dump(2) + "\n", out);
        return kExitOk;
    }

    std::string header = "x,y,z,phi";
    std::string row = num(p.x()) + "," + num(p.y()) + "," + num(p.z()) + "," + num(v.phi);
    if (tilde) {
        header += ",phi_tilde";
        row += "," + num(v.phi_tilde);
    }
    header += ",err,region,kappa";
    row += "," + num(v.error_estimate) + "," + to_string(v.region) + "," + num(ctx.kappa);
    if (derivs) {
        const auto d = derivatives(p, ctx);
        header += ",phi_z,phi_a_re,phi_a_im,phi_zzz,phi_zaa_re,phi_zaa_im,phi_zabarabar_re,phi_zabarabar_im,"
                  "phi_zaabar_re,phi_zaabar_im";
        for (double x : {d.phi_z, d.phi_a.real(), d.phi_a.imag(), d.phi_zzz, d.phi_zaa.real(), d.phi_zaa.imag(),
                         d.phi_zabarabar.real(), d.phi_zabarabar.imag(), d.phi_zaabar.real(), d.phi_zaabar.imag()}) {
            row += "," + num(x);
        }
    }
    emit(cfg, header + "\n" + row + "\n", out);
    return kExitOk;
}

double axis_value(double lo, double hi, int n, int i) {
    return n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

int run_grid(const RunConfig& cfg, const Ranges& r, std::ostream& out) {
    if (cfg.format == "json") throw ConfigError("grid writes CSV only");
    if (r.nx < 1 || r.ny < 1 || r.nz < 1) throw ConfigError("--nx, --ny, --nz must be positive");
    if (r.xmin > r.xmax || r.ymin > r.ymax || r.zmin > r.zmax) throw ConfigError("grid bounds must satisfy min <= max");
    const auto ctx = calibrate_kappa(cfg.eps, cfg.quad, calibration_options(cfg));
    const std::size_t total = static_cast<std::size_t>(r.nx) * r.ny * r.nz;
    std::vector<std::string> rows(total);
    std::atomic<std::size_t> next{0};
    const int pr = cfg.precision;

    auto worker = [&] {
        for (std::size_t idx = next++; idx < total; idx = next++) {
            const int ix = static_cast<int>(idx / (static_cast<std::size_t>(r.ny) * r.nz));
            const int iy = static_cast<int>((idx / r.nz) % r.ny);
            const int iz = static_cast<int>(idx % r.nz);
            const double x = axis_value(r.xmin, r.xmax, r.nx, ix);
            const double y = axis_value(r.ymin, r.ymax, r.ny, iy);
            const double z = axis_value(r.zmin, r.zmax, r.nz, iz);
            std::string prefix = format_number(x, pr) + "," + format_number(y, pr) + "," + format_number(z, pr) + ",";
            try {
                const auto v = phi(SpatialPoint(x, y, z), ctx);
                rows[idx] = prefix + format_number(v.phi, pr) + "," + format_number(v.phi_tilde, pr) + "," +
                            format_number(v.error_estimate, pr) + "," + (v.converged ? "ok" : "unconverged") + "\n";
            } catch (const WallError&) {
                rows[idx] = prefix + ",,,wall\n";
            } catch (const DomainError&) {
                rows[idx] = prefix + ",,,error\n";
            }
        }
    };
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned count = r.threads > 0 ? static_cast<unsigned>(r.threads) : hw;
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < std::min<std::size_t>(count, total); ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::string text = "x,y,z,phi,phi_tilde,err,flag\n";
    for (const auto& row : rows) text += row;
    emit(cfg, text, out);
    return kExitOk;
}

int run_coeffs(const RunConfig& cfg, const std::string& list, std::ostream& out) {
    const auto eps_list = parse_list(list, "--eps-list");
    const int pr = cfg.precision;
    ordered_json rows = ordered_json::array();
    std::string text = "eps,lambda,mu,nu,varpi,kappa,kappa_spread\n";
    for (double e : eps_list) {
        RunConfig local = cfg;
        local.eps = e;
        local.validate();
        const auto c = coefficients(e, cfg.quad);
        const auto ctx = calibrate_kappa(e, cfg.quad, calibration_options(local));
        text += csv({format_number(e, pr), format_number(c.lambda, pr), format_number(c.mu, pr),
                     format_number(c.nu, pr), format_number(c.varpi, pr), format_number(ctx.kappa, pr),
                     format_number(ctx.calibration.spread, pr)});
        rows.push_back({{"eps", e},
                        {"lambda", c.lambda},
                        {"mu", c.mu},
                        {"nu", c.nu},
                        {"varpi", c.varpi},
                        {"kappa", ctx.kappa},
                        {"kappa_spread", ctx.calibration.spread}});
    }
    emit(cfg, cfg.format == "json" ? rows.dump(2) + "\n" : text, out);
    return kExitOk;
}

int run_verify(const RunConfig& cfg, const std::string& suite, std::ostream& out) {
    const auto ctx = calibrate_kappa(cfg.eps, cfg.quad, calibration_options(cfg));
    const auto reports = run_suites(suite, ctx, cfg.seed);
    bool pass = true;
    for (const auto& r : reports) pass = pass && r.overall();
    if (cfg.format == "csv") {
        std::string text = "suite,check,measured,tolerance,pass\n";
        for (const auto& r : reports) {
            for (const auto& c : r.checks) {
                text += csv({r.suite_name, "\"" + c.name + "\"", format_number(c.measured, cfg.precision),
                             format_number(c.tolerance, cfg.precision), c.pass ? "true" : "false"});
            }
        }
        emit(cfg, text, out);
    } else {
        emit(cfg, to_json(reports, cfg.eps, ctx.kappa), out);
    }
    return pass ? kExitOk : kExitVerifyFailed;
}

int run_geometry(const RunConfig& cfg, double theta, std::ostream& out) {
    const int pr = cfg.precision;
    auto num = [pr](double x) { return format_number(x, pr); };
    ordered_json rows = ordered_json::array();
    std::string text = "theta,orientation,line_angle,w_re,w_im,u_re,u_im,tangent_distance,curve_residual\n";
    for (Orientation o : {Orientation::Positive, Orientation::Negative}) {
        const auto g = gauss_map(theta, o, cfg.eps);
        const double residual = std::abs(q_of_w(g.image.w, cfg.eps) + g.image.u * g.image.u);
        const int sign = static_cast<int>(o);
        text += csv({num(theta), std::to_string(sign), num(g.line_angle), num(g.image.w.real()), num(g.image.w.imag()),
                     num(g.image.u.real()), num(g.image.u.imag()), num(g.tangent_distance), num(residual)});
        rows.push_back({{"theta", theta},
                        {"orientation", sign},
                        {"line_angle", g.line_angle},
                        {"w", {g.image.w.real(), g.image.w.imag()}},
                        {"u", {g.image.u.real(), g.image.u.imag()}},
                        {"tangent_distance", g.tangent_distance},
                        {"curve_residual", residual}});
    }
    emit(cfg, cfg.format == "json" ? rows.dump(2) + "\n" : text, out);
    return kExitOk;
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multivalued harmonic functions branched over an ellipse"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* eval = app.add_subcommand("eval", "Evaluate phi at one point");
    std::string point;
    bool tilde = false, derivs = false;
    add_common(eval, cfg);
    eval->add_option("--point", point, "X,Y,Z")->required();
    eval->add_flag("--tilde", tilde, "Also print phi_tilde = sign(Z) phi");
    eval->add_flag("--derivs", derivs, "Also print the derivative bundle");

    auto* grid = app.add_subcommand("grid", "Tabulate phi on a box grid as CSV");
    Ranges ranges;
    add_common(grid, cfg);
    grid->add_option("--xmin", ranges.xmin);
    grid->add_option("--xmax", ranges.xmax);
    grid->add_option("--ymin", ranges.ymin);
    grid->add_option("--ymax", ranges.ymax);
    grid->add_option("--zmin", ranges.zmin);
    grid->add_option("--zmax", ranges.zmax);
    grid->add_option("--nx", ranges.nx);
    grid->add_option("--ny", ranges.ny);
    grid->add_option("--nz", ranges.nz);
    grid->add_option("--threads", ranges.threads, "Worker threads (0 = hardware concurrency)");

    auto* coeffs_cmd = app.add_subcommand("coeffs", "Asymptotic coefficients and kappa");
    std::string eps_list;
    add_common(coeffs_cmd, cfg, false);
    coeffs_cmd->add_option("--eps-list", eps_list, "E1,E2,...")->required();

    auto* verify_cmd = app.add_subcommand("verify", "Run verification suites");
    std::string suite = "all";
    add_common(verify_cmd, cfg);
    std::vector<std::string> suite_choices{"all"};
    for (const auto& n : suite_names()) suite_choices.push_back(n);
    verify_cmd->add_option("--suite", suite)->check(CLI::IsMember(suite_choices));
    verify_cmd->add_option("--seed", cfg.seed, "Seed for randomized sample points");

    auto* geometry_cmd = app.add_subcommand("geometry", "Gauss map and tangent distance at one angle");
    double theta = 0.0;
    add_common(geometry_cmd, cfg);
    geometry_cmd->add_option("--theta", theta, "Ellipse parameter of the tangency point")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        cfg.validate();
        if (eval->parsed()) return run_eval(cfg, point, tilde, derivs, out);
        if (grid->parsed()) return run_grid(cfg, ranges, out);
        if (coeffs_cmd->parsed()) return run_coeffs(cfg, eps_list, out);
        if (verify_cmd->parsed()) return run_verify(cfg, suite, out);
        if (geometry_cmd->parsed()) return run_geometry(cfg, theta, out);
    } catch (const ConfigError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "evaluation error: " << e.what() << "\n";
        return kExitEvaluation;
    }
    err << "usage error: no subcommand\n";
    return kExitUsage;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"twistor"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace twistor::cli
