#pragma once

// Command-line front end: scenario selection, CSV rendering, verification.

#include "spinboson/dynamics.hpp"
#include "spinboson/errors.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace spinboson::cli {

enum class Scenario { figure1, figure2, figure3, sweep, verify, pointer_demo };
enum class Initial { upper, lower, plus_pointer, minus_pointer, custom };

struct RunSpec {
    Scenario scenario = Scenario::figure1;
    SimConfig config;                 // grid filled in by parse
    Initial initial = Initial::upper;
    cplx alpha{1.0, 0.0};             // custom start, normalized by parse
    cplx beta{0.0, 0.0};
    std::string output_path;          // empty: stdout
    bool oracle = false;              // append an oracle column to figure scenarios
    bool rwa = true;
    double omega = 50.0;              // field frequency in units of g (delta0 = omega)
    double oracle_step = 1e-3;
    std::vector<double> sweep_nbar;
    std::vector<double> sweep_phi;
    std::vector<std::string> columns;
    unsigned threads = 0;             // 0: hardware concurrency
    bool nmax_given = false;
    double tmax_prime = 0.0;
    int steps = 0;
};

struct UsageError : Error {
    using Error::Error;
};

// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitGuard = 2;
inline constexpr int kExitVerifyFailed = 3;

// Parses argv-style arguments (args[0] is the program name). Flags override
// SPINBOSON_* environment variables, which override defaults. Throws
// UsageError; returns nullopt after printing help to `out`.
std::optional<RunSpec> parse(const std::vector<std::string>& args, std::ostream& out);

QubitState initial_state(const RunSpec& spec);

// Main CSV of a figure, sweep or pointer-demo run.
std::string render_csv(const RunSpec& spec);
// Coincidence-time table of pointer-demo.
std::string render_coincidences(const RunSpec& spec);

// Executes spec, writing files or stdout. Returns an exit status; numerical
// guards propagate as exceptions.
int run(const RunSpec& spec, std::ostream& out, std::ostream& err);

// parse + run with exceptions mapped to exit statuses.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string format_number(double v);

} // namespace spinboson::cli
