#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "twistor/cli.hpp"

using namespace twistor;
using twistor::cli::dispatch;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> split(const std::string& line, char sep = ',') {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, sep)) cells.push_back(cell);
    if (!line.empty() && line.back() == sep) cells.emplace_back();
    return cells;
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) out.push_back(line);
    return out;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("twistor_test_" + name);
}

}  // namespace

TEST_CASE("format_number") {
    CHECK(cli::format_number(0.1) == "0.1");
    CHECK(cli::format_number(1.0 / 3.0) == "0.3333333333333333");
    CHECK(cli::format_number(1.0 / 3.0, 4) == "0.3333");
    CHECK(cli::format_number(2.0) == "2");
    CHECK(cli::format_number(NAN) == "nan");
    for (double v : {std::numbers::pi, 1e-300, -123456.789, 6.02e23}) {
        CHECK(std::stod(cli::format_number(v)) == v);
    }
}

TEST_CASE("coeffs at eps = 0") {
    const auto r = run({"coeffs", "--eps-list", "0"});
    REQUIRE(r.code == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == "eps,lambda,mu,nu,varpi,kappa,kappa_spread");
    const auto cells = split(rows[1]);
    REQUIRE(cells.size() == 7);
    CHECK(std::stod(cells[1]) == doctest::Approx(std::numbers::pi / 4).epsilon(1e-12));
    CHECK(std::stod(cells[2]) == doctest::Approx(std::numbers::pi / 4).epsilon(1e-12));
    CHECK(std::stod(cells[3]) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-12));
    CHECK(std::stod(cells[4]) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(std::stod(cells[5]) - 1.0) <= 1e-6);

    const auto j = run({"coeffs", "--eps-list", "0.5,-0.5", "--format", "json"});
    REQUIRE(j.code == 0);
    const auto parsed = nlohmann::json::parse(j.out);
    REQUIRE(parsed.size() == 2);
    CHECK(parsed[0]["lambda"].get<double>() == doctest::Approx(parsed[1]["mu"].get<double>()).epsilon(1e-12));
}

TEST_CASE("eval on the axis") {
    const auto r = run({"eval", "--eps", "0", "--point", "0,0,1", "--tilde", "--derivs"});
    REQUIRE(r.code == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 2);
    const auto header = split(rows[0]);
    const auto cells = split(rows[1]);
    REQUIRE(header.size() == cells.size());
    CHECK(header[3] == "phi");
    CHECK(header[4] == "phi_tilde");
    CHECK(std::stod(cells[3]) == doctest::Approx(std::numbers::pi / 2 + 1).epsilon(1e-9));
    const auto zzz = std::find(header.begin(), header.end(), "phi_zzz") - header.begin();
    CHECK(std::stod(cells[zzz]) == doctest::Approx(1.0).epsilon(1e-8));

    const auto j = run({"eval", "--eps", "0.5", "--point", "0.3,0.2,0.4", "--format", "json"});
    REQUIRE(j.code == 0);
    const auto parsed = nlohmann::json::parse(j.out);
    CHECK(parsed["region"] == "OffPlane");
    CHECK(parsed.contains("phi"));
}

TEST_CASE("usage and evaluation errors") {
    CHECK(run({}).code == cli::kExitUsage);
    CHECK(run({"frobnicate"}).code == cli::kExitUsage);
    CHECK(run({"eval", "--point", "0,0,1"}).code == cli::kExitUsage);
    CHECK(run({"eval", "--eps", "0", "--point", "0,0"}).code == cli::kExitUsage);
    CHECK(run({"eval", "--eps", "0", "--point", "a,b,c"}).code == cli::kExitUsage);
    CHECK(run({"eval", "--eps", "0.97", "--point", "0,0,1"}).code == cli::kExitUsage);
    CHECK(run({"eval", "--eps", "1", "--point", "0,0,1", "--allow-extreme"}).code == cli::kExitUsage);
    CHECK(run({"eval", "--eps", "0", "--point", "0,0,1", "--quad-initial", "12"}).code == cli::kExitUsage);
    CHECK(run({"verify", "--eps", "0", "--suite", "bogus"}).code == cli::kExitUsage);
    CHECK(run({"coeffs", "--eps-list", "0,0.99"}).code == cli::kExitUsage);

    const auto wall = run({"eval", "--eps", "0", "--point", "2,0,0"});
    CHECK(wall.code == cli::kExitEvaluation);
    CHECK(wall.err.find("outer wall") != std::string::npos);
    CHECK(std::count(wall.err.begin(), wall.err.end(), '\n') == 1);

    const auto unwritable = run({"eval", "--eps", "0", "--point", "0,0,1", "--out", "/nonexistent/dir/x.csv"});
    CHECK(unwritable.code == cli::kExitUsage);
}

TEST_CASE("grid output is flagged, ordered and byte-stable") {
    const auto a = temp_file("grid_a.csv");
    const auto b = temp_file("grid_b.csv");
    const std::vector<std::string> base{"grid", "--eps", "0.5", "--xmin", "-2", "--xmax", "2", "--ymin", "-1",
                                        "--ymax", "1", "--zmin", "-0.5", "--zmax", "0.5", "--nx", "5",
                                        "--ny", "3", "--nz", "3"};
    auto with = [&](const std::filesystem::path& p, const std::string& threads) {
        auto args = base;
        for (const auto& s : {"--out", p.c_str()}) args.emplace_back(s);
        args.emplace_back("--threads");
        args.push_back(threads);
        return run(args);
    };
    REQUIRE(with(a, "1").code == 0);
    REQUIRE(with(b, "4").code == 0);
    const std::string text = slurp(a);
    CHECK(text == slurp(b));
    CHECK(text.find('\r') == std::string::npos);

    const auto rows = lines(text);
    REQUIRE(rows.size() == 1 + 5 * 3 * 3);
    CHECK(rows[0] == "x,y,z,phi,phi_tilde,err,flag");
    int walls = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto cells = split(rows[i]);
        REQUIRE(cells.size() == 7);
        if (cells[6] == "wall") {
            ++walls;
            CHECK(cells[2] == "0");
            CHECK(cells[3].empty());
        } else {
            CHECK(cells[6] == "ok");
        }
    }
    CHECK(walls > 0);
    // Index order: x slowest, z fastest.
    CHECK(split(rows[1])[0] == "-2");
    CHECK(split(rows[2])[2] == "0");
    std::filesystem::remove(a);
    std::filesystem::remove(b);

    CHECK(run({"grid", "--eps", "0", "--nx", "0"}).code == cli::kExitUsage);
    CHECK(run({"grid", "--eps", "0", "--format", "json"}).code == cli::kExitUsage);
}

TEST_CASE("geometry subcommand") {
    const auto r = run({"geometry", "--eps", "0.5", "--theta", "0.3"});
    REQUIRE(r.code == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 3);
    for (int i = 1; i <= 2; ++i) {
        const auto cells = split(rows[i]);
        REQUIRE(cells.size() == 9);
        CHECK(std::stod(cells[8]) <= 1e-10);
        const double p = std::stod(cells[7]), t = std::stod(cells[2]);
        CHECK(p * p == doctest::Approx(1.0 + 0.5 * std::cos(2 * t)).epsilon(1e-12));
    }
}

TEST_CASE("verify subcommand") {
    const auto r = run({"verify", "--eps", "0.5", "--suite", "geometry"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["overall"] == true);
    CHECK(j["suites"][0]["suite"] == "geometry");

    const auto csv = run({"verify", "--eps", "0.5", "--suite", "coeffs", "--format", "csv"});
    REQUIRE(csv.code == 0);
    CHECK(lines(csv.out)[0] == "suite,check,measured,tolerance,pass");

    const auto again = run({"verify", "--eps", "0.5", "--suite", "geometry"});
    CHECK(again.out == r.out);
    const auto other_seed = run({"verify", "--eps", "0.5", "--suite", "geometry", "--seed", "99"});
    CHECK(nlohmann::json::parse(other_seed.out)["suites"][0]["seed"] == 99);
}
