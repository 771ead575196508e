#pragma once

// JSON run configuration: parsing, validation with field paths, initial
// profiles and sweep expansion.

#include "fracrd/errors.hpp"
#include "fracrd/operators.hpp"
#include "fracrd/reactions.hpp"
#include "fracrd/stepper.hpp"
#include "fracrd/verify.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fracrd {

/// Invalid configuration; what() starts with the offending field path.
struct ConfigError : ParameterError {
    ConfigError(const std::string& path, const std::string& msg)
        : ParameterError(path + ": " + msg), path_(path) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

struct ProfileSpec {
    std::string kind = "constant";  // single_mode | bump | constant | random
    int k = 1;
    double amplitude = 1.0;
    double offset = 0.0;
    double center = 0.5;
    double width = 0.1;
    double height = 1.0;
    double c = 1.0;
    std::optional<std::uint64_t> seed;
    double Lambda = 1.0;
};

struct OutputSpec {
    std::string dir = "out";
    std::string csv = "diagnostics.csv";
    bool plot = false;
    bool snapshots = false;
};

struct ConvergeSpec {
    std::vector<double> dts{1.0 / 64, 1.0 / 128, 1.0 / 256, 1.0 / 512};
    int mode = 0;
    double amplitude = 1.0;
};

struct VerifySpec {
    int random_fields = 20;
    int random_tuples = 10000;
    int convexity_paths = 10;
    bool corrupt = false;
};

struct RunSpec {
    Domain1D domain;
    KineticParams kinetics;
    DiffusionParams diffusion;
    ProfileSpec u;
    ProfileSpec v;
    SolverConfig solver;
    OutputSpec outputs;
    ConvergeSpec converge;
    VerifySpec verify;
    std::uint64_t seed = 1;
    // Dotted parameter path -> values, expanded as a cartesian product.
    std::vector<std::pair<std::string, std::vector<double>>> sweep;
    nlohmann::json raw;

    /// Hex digest of the canonical JSON text, for report metadata.
    std::string hash() const;
};

RunSpec parse_runspec(const nlohmann::json& doc);
/// Reads and parses a config file; syntax errors become ConfigError("<file>").
RunSpec load_runspec(const std::string& path);

/// Samples a profile on the domain grid; a random profile without its own
/// seed draws from fallback_seed.
Field make_profile(const ProfileSpec& p, const Domain1D& dom, std::uint64_t fallback_seed);

/// One RunSpec per point of the sweep grid, in row-major order of the grid
/// as listed. Each returned spec has its sweep cleared.
std::vector<std::pair<std::vector<double>, RunSpec>> expand_sweep(const RunSpec& spec);

SuiteConfig suite_config(const RunSpec& spec);

}  // namespace fracrd
