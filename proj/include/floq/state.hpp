#pragma once

#include "floq/errors.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace floq {

using cplx = std::complex<double>;

/// Dense amplitude storage is capped at this chain length (2^14 amplitudes).
inline constexpr int kMaxSites = 14;

/// z-basis product configuration: m[j] in {-1,+1} for sites j = 1..L.
/// Site j maps to bit j-1; spin-down is bit 0, so the all-down state has
/// basis index 0.
struct SpinConfiguration {
    std::vector<int> m;

    int sites() const { return static_cast<int>(m.size()); }

    static SpinConfiguration all_down(int length) {
        return SpinConfiguration{std::vector<int>(static_cast<std::size_t>(length), -1)};
    }

    void validate() const {
        if (m.empty() || sites() > kMaxSites)
            throw ConfigError("spin configuration length must be in 1..14");
        for (int v : m) {
            if (v != -1 && v != 1) throw ConfigError("spin values must be -1 or +1");
        }
    }
};

/// index = sum_j b_j 2^(j-1) with b_j = (1+m_j)/2. Throws on length
/// mismatch when expected_sites >= 0.
std::uint64_t basis_index(const SpinConfiguration& config, int expected_sites = -1);

/// Inverse of basis_index.
SpinConfiguration config_from_index(std::uint64_t index, int sites);

/// Normalized complex amplitude vector over the 2^L computational basis.
class StateVector {
  public:
    StateVector() = default;

    /// Basis product state |index> on `sites` spins.
    static StateVector basis_state(int sites, std::uint64_t index);

    /// All spins down: basis index 0.
    static StateVector all_down(int sites);

    /// Takes ownership of raw amplitudes (must have power-of-two size) and
    /// normalizes; throws NumericalIntegrity on a zero vector.
    static StateVector normalized(std::vector<cplx> amplitudes);

    /// Raw amplitudes without normalization (intermediate results of linear
    /// maps may be unnormalized).
    static StateVector raw(std::vector<cplx> amplitudes);

    int sites() const { return sites_; }
    std::size_t dim() const { return amps_.size(); }
    const std::vector<cplx>& amplitudes() const { return amps_; }
    std::vector<cplx>& amplitudes() { return amps_; }
    const cplx* data() const { return amps_.data(); }
    cplx* data() { return amps_.data(); }
    cplx operator[](std::size_t i) const { return amps_[i]; }

    double norm_sq() const;
    double norm() const;

  private:
    explicit StateVector(std::vector<cplx> amps);

    std::vector<cplx> amps_;
    int sites_ = 0;
};

/// <a|b>, conjugate-linear in the first argument. Throws DimensionMismatch.
cplx inner_product(const StateVector& a, const StateVector& b);

} // namespace floq
