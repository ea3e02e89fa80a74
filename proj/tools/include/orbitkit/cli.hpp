#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "orbitkit/rational.hpp"

namespace orbitkit::cli {

enum class Command { orbit, closure, bertrand_scan, spectrum, ladder, wkb, runge_lenz };
enum class Format { csv, json };

std::string to_string(Command command);
std::optional<Command> parse_command(const std::string& name);

// Malformed or inconsistent invocation; maps to exit status 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// --help was given; what() is the help text. Maps to exit status 0.
class HelpRequested : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// "q/p" is taken literally (reduced), a decimal goes through continued
/// fractions with denominators up to 64. Throws UsageError on p = 0 or junk.
Rational parse_kappa(const std::string& text);

/// "3" -> {3, 3}, "0..3" -> {0, 3}.
std::pair<int, int> parse_nr_range(const std::string& text);

struct RunConfig {
    Command command = Command::orbit;

    // Potential: either (a, nu, b) or the alkali shorthand lambda.
    std::optional<double> a;
    std::optional<double> nu;
    std::optional<double> b;
    std::optional<double> lambda;

    std::optional<double> L;
    std::optional<double> E;
    std::optional<Rational> kappa;

    int l = 0;
    std::optional<std::pair<int, int>> nr;
    bool up = true;

    double t_end = 100.0;
    // Unset tolerances fall back to each command's own default.
    std::optional<double> tol;
    std::optional<double> tol_rational;
    std::int64_t max_den = 64;

    std::optional<std::size_t> grid_n;
    std::optional<double> r_max;

    // bertrand-scan sampling
    std::vector<double> nu_list = {-1.5, -1.0, -0.5, 0.5, 1.0, 2.0, 3.0};
    std::vector<double> eccentricities = {0.1, 0.3, 0.6};

    std::optional<std::filesystem::path> output;
    std::optional<Format> format;
    std::optional<std::filesystem::path> chi_output;
    unsigned threads = 1;
};

/// Parses argv (flags over an optional --config JSON document) into a
/// validated RunConfig. Throws UsageError.
RunConfig parse_arguments(int argc, const char* const* argv);

/// Executes a validated configuration. Writes the one-line summary to `out`
/// and returns the exit status; failures print an error object to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_arguments + run, with usage failures reported as exit status 2.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace orbitkit::cli
