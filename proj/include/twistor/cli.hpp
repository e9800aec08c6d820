#pragma once

// Command-line front end. Subcommands: eval, grid, coeffs, verify, geometry.
// Exit codes: 0 success, 1 failed verification, 2 usage or configuration
// error, 3 evaluation error (wall points, calibration, domain).

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "twistor/field.hpp"
#include "twistor/verify.hpp"

namespace twistor::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitEvaluation = 3;

struct RunConfig {
    double eps = 0.0;
    QuadratureConfig quad;
    std::string out_path;      // empty: stdout
    std::string format;        // "csv" or "json"; empty picks the subcommand default
    int precision = 0;         // significant digits; 0 means shortest round-trip
    std::uint64_t seed = kDefaultSeed;
    bool allow_extreme = false;

    /// Throws ConfigError when |eps| > 0.95 without allow_extreme, |eps| >= 1,
    /// the precision is outside [0, 17] or the format is unknown.
    void validate() const;
};

/// Shortest round-trip decimal when precision == 0, otherwise %.{precision}g.
std::string format_number(double v, int precision = 0);

/// Runs one command line. `argv[0]` is the program name.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload for tests: arguments without the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace twistor::cli
