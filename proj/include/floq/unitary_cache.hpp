#pragma once

#include "floq/propagator.hpp"

#include <filesystem>
#include <optional>

namespace floq {

/// Identity of a computed one-period operator. Doubles are compared
/// bit-for-bit: a cache hit replays exactly the stored result.
struct UnitaryCacheKey {
    int sites;
    double field;
    double exchange;
    double base_frequency;
    std::vector<int> multipliers;
    double dt;
    int series_order;
    StepMethod method;

    static UnitaryCacheKey make(const LatticeConfig& cfg, const DriveAssignment& drive,
                                const PropagatorOptions& opts);
};

std::filesystem::path cache_file_path(const std::filesystem::path& dir, const UnitaryCacheKey& key);

/// Loads a previously stored operator; returns nullopt on miss, version
/// mismatch, or key mismatch.
std::optional<UnitaryMatrix> try_load_unitary(const std::filesystem::path& dir,
                                              const UnitaryCacheKey& key);

void store_unitary(const std::filesystem::path& dir, const UnitaryCacheKey& key,
                   const UnitaryMatrix& u);

/// Cached wrapper around one_period_operator; `dir` empty disables caching.
UnitaryMatrix cached_one_period_operator(const LatticeConfig& cfg, const DriveAssignment& drive,
                                         const PropagatorOptions& opts,
                                         const std::filesystem::path& dir);

} // namespace floq
