#pragma once

#include "floq/observables.hpp"
#include "floq/protocol.hpp"

#include <filesystem>
#include <string>

namespace floq {

/// Full run description: defaults, overridden by a sectioned key=value
/// config file, overridden by command-line flags. Unknown sections or keys
/// in the file are rejected.
struct RunConfig {
    LatticeConfig lattice{3, 1.0, 0.1};

    // [drive]
    std::string preset = "odd-omega1-even-omega0";
    double omega_base = 2.0;
    std::vector<int> multipliers; // empty: use the preset pattern

    PropagatorOptions propagator{};
    ScanGrid scan{};

    // [protocol]
    std::string sequence = default_steering_sequence();
    int block_periods = 0; // m; 0 selects round(Omega0 / (2 J0))
    bool strict_m = true;
    int periods = 40; // evolve command

    // [output]
    std::string out_dir = "out";
    bool svg = true;
    std::string cache_dir;
    bool deterministic = true;

    DriveAssignment drive() const;
    DriveTemplate drive_template() const;
    void validate() const;

    /// Prints regime warnings (low g/J0 ratio, non-standard multipliers).
    void warn(std::ostream& os) const;
};

/// Parses the sectioned key=value file; throws ConfigError on unknown keys.
RunConfig load_config_file(const std::filesystem::path& path, RunConfig base = RunConfig{});

/// Applies one "section.key=value" assignment; shared by the file loader.
void apply_config_value(RunConfig& cfg, const std::string& section, const std::string& key,
                        const std::string& value);

std::vector<int> parse_multipliers(const std::string& text);

} // namespace floq
