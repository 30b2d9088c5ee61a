#pragma once

#include <stdexcept>
#include <string>

namespace floq {

/// Invalid run configuration, CLI usage, or malformed input file.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Operands with incompatible dimensions (state vs. operator vs. matrix).
struct DimensionMismatch : std::invalid_argument {
    explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

/// Site or bond index outside 1..L (or 1..L-1).
struct SiteOutOfRange : std::out_of_range {
    explicit SiteOutOfRange(const std::string& what) : std::out_of_range(what) {}
};

/// A drive whose one-period averages are too small to be resonant but too
/// large to be exact zeros: near, but not on, a resonance.
struct IncommensurateDrive : std::runtime_error {
    explicit IncommensurateDrive(const std::string& what) : std::runtime_error(what) {}
};

/// Block length ratio is not an integer while strict mode is enabled.
struct NonIntegerRatio : std::runtime_error {
    explicit NonIntegerRatio(const std::string& what) : std::runtime_error(what) {}
};

/// The truncated exponential series cannot reach tolerance at the given step.
struct SeriesDivergence : std::runtime_error {
    explicit SeriesDivergence(const std::string& what) : std::runtime_error(what) {}
};

/// A norm / unitarity / positivity assertion failed during a run.
struct NumericalIntegrity : std::runtime_error {
    explicit NumericalIntegrity(const std::string& what) : std::runtime_error(what) {}
};

} // namespace floq
