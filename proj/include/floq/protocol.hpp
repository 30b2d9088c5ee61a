#pragma once

#include "floq/observables.hpp"

#include <string>

namespace floq {

/// Block sequence over the two one-period operators, applied in temporal
/// (left-to-right) order, each block lasting m periods.
struct ProtocolSequence {
    std::vector<int> blocks; // entries 1 or 2
    int periods_per_block = 1;

    int total_periods() const { return static_cast<int>(blocks.size()) * periods_per_block; }
    double duration(double period) const { return total_periods() * period; }
};

/// Block length that carries one pair flip per block: round(Omega0 / (2 J0))
/// with Omega0 = 2 g. In strict mode a non-integer ratio throws
/// NonIntegerRatio (deviations accumulate phase errors over the run).
int default_m(const LatticeConfig& cfg, bool strict = true);

/// The edge-to-center-and-back block order; applied over m periods per
/// block it returns the chain to an almost uncorrelated state.
std::string default_steering_sequence();

/// Parses a comma-separated block list like "1,2,1,2,1,1,2,1,2,1".
ProtocolSequence compile_sequence(const std::string& text, int periods_per_block);

/// Applies the sequence to psi0 sampling observables at every period
/// boundary; the series has total_periods()+1 rows including t = 0.
/// Aborts with NumericalIntegrity if the state norm drifts beyond 1e-7.
ObservableSeries run_protocol(const StateVector& psi0, const UnitaryMatrix& u1,
                              const UnitaryMatrix& u2, const ProtocolSequence& seq,
                              double period);

/// Max over samples and bonds of |C_{j,j+1}(series1) - C_{L-j,L-j+1}(series2)|.
/// Small for odd L (the two drive assignments are mirror images); large for
/// even L.
double mirror_check(const ObservableSeries& series1, const ObservableSeries& series2, int sites);

} // namespace floq
