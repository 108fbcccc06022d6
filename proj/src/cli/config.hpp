#pragma once

// Run configuration: flat key=value pairs with defaults, from a file and/or flags.
//
// Units at the boundary:
//   R       "0.8" -> R Omega/c (dimensionless), "100nm" / "0.1um" / "1e-7m" -> length
//   lambda  "780nm", "5.88mm", bare numbers are nm
//   omega   rad/s, or with suffix "eV", "GHz", "THz" (2 pi f); overrides lambda
//   z range in units of zunit: cOmega (z Omega/c), R, nm

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cylvdw/greens.hpp"
#include "cylvdw/potential.hpp"

namespace cylvdw::cli {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct KeySpec {
    std::string name;
    std::string default_value;
    std::string help;
    bool hashed = true;  // part of the config hash (output path and jobs are not)
};

const std::vector<KeySpec>& config_keys();

class RunConfig {
public:
    RunConfig();
    const std::string& get(const std::string& key) const;
    void set(const std::string& key, const std::string& value);
    const std::map<std::string, std::string>& values() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

/// key=value lines; '#' starts a comment. Unknown keys are rejected.
void apply_file(RunConfig& config, std::istream& in, const std::string& source);
void apply_file(RunConfig& config, const std::string& path);

enum class Computation { ground, resonant_init, resonant_steady, green, modes };

struct Resolved {
    greens::Geometry geometry;
    potential::Emitter emitter;
    std::string core_name, cladding_name;
    std::vector<double> z;  // m
    double length_unit = 0.0;  // c/Omega
    Computation computation = Computation::ground;
    potential::PotentialOptions options;
    bool decomposition = true;
    std::optional<double> xi;  // imaginary frequency / Omega for the green command
    std::string output;
    int jobs = 1;
};

/// Validates every key and builds the typed run description. Throws ConfigError.
Resolved resolve(const RunConfig& config);

double parse_length(const std::string& text, double length_unit, const std::string& key);
double parse_omega(const RunConfig& config);

std::string canonical(const RunConfig& config);
std::uint64_t config_hash(const RunConfig& config);
std::string hash_hex(const RunConfig& config);

/// '#'-prefixed lines: version, hash and every key=value (including defaults).
std::vector<std::string> header_lines(const RunConfig& config);

/// Inverse of header_lines.
RunConfig parse_header(std::istream& in);

}  // namespace cylvdw::cli
