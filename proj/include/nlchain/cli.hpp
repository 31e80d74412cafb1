// Command-line front end: flat key=value (or JSON) config files, seven
// subcommands, CSV/JSON emission with full-precision reals and deterministic
// bytes, exit codes 0 (ok) / 1 (input error) / 2 (numerical failure).
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nlchain/chain.hpp"

namespace nlchain {

enum class Command { dispersion, matrix, simulate, kernel, reconstruct, gaussian, validate };

Command parse_command_name(const std::string& name);
const char* command_name(Command command);

// every recognized config key, parsed but not yet semantically validated;
// commands pick what they need and reject what is missing
struct ParsedConfig {
    Command command = Command::validate;
    bool has_command = false;

    std::optional<int> n;
    std::optional<double> spacing; // h
    std::optional<double> mass;    // mu
    std::optional<double> density; // rho0
    std::vector<Term> terms;       // characteristic terms (A_m for reconstruct)
    bool family_gaussian = false;
    std::optional<double> c0;
    std::optional<double> a;
    std::optional<int> truncation_order;
    std::optional<double> gamma;

    std::optional<double> dt;
    std::optional<long> steps;
    std::string integrator = "exact";
    std::optional<long> snapshot_stride;
    std::string init = "mode";
    std::optional<int> mode_index;
    std::optional<double> amplitude;
    std::optional<double> width;
    std::optional<unsigned long> seed;

    std::optional<int> samples;
    std::optional<double> k_max;
    std::optional<double> x_max;
    std::vector<int> survival;
    std::string boundary = "infinite";
    std::optional<int> grid_points;
    double tolerance = 1e-12;
};

// dispatches on the file extension: ".json" -> JSON, anything else -> key=value
ParsedConfig parse_config_file(const std::string& path);
ParsedConfig parse_config_kv(std::istream& in);
ParsedConfig parse_config_json(std::istream& in);

// one-line canonical form echoed into every output (independent of the
// config's surface syntax)
std::string canonical_echo(const ParsedConfig& config);

// shortest-width formatting at 17 significant digits (round-trip safe)
std::string format_real(double value);

// runs one subcommand; throws library errors upward for exit-code mapping
int run_command(const ParsedConfig& config, std::ostream& out, std::ostream& err);

// full front end: flag parsing, config load, output redirection, error mapping
int run_main(int argc, char** argv);

} // namespace nlchain
