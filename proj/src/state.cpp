#include "floq/state.hpp"

#include "floq/kernels.hpp"

#include <bit>
#include <cmath>

namespace floq {

std::uint64_t basis_index(const SpinConfiguration& config, int expected_sites) {
    config.validate();
    if (expected_sites >= 0 && config.sites() != expected_sites)
        throw DimensionMismatch("spin configuration has " + std::to_string(config.sites()) +
                                " sites, expected " + std::to_string(expected_sites));
    std::uint64_t index = 0;
    for (int j = 0; j < config.sites(); ++j) {
        if (config.m[static_cast<std::size_t>(j)] > 0) index |= (std::uint64_t{1} << j);
    }
    return index;
}

SpinConfiguration config_from_index(std::uint64_t index, int sites) {
    if (sites < 1 || sites > kMaxSites) throw ConfigError("site count must be in 1..14");
    if (index >= (std::uint64_t{1} << sites))
        throw DimensionMismatch("basis index out of range for " + std::to_string(sites) + " sites");
    SpinConfiguration config;
    config.m.resize(static_cast<std::size_t>(sites));
    for (int j = 0; j < sites; ++j) {
        config.m[static_cast<std::size_t>(j)] = (index >> j) & 1 ? 1 : -1;
    }
    return config;
}

StateVector::StateVector(std::vector<cplx> amps) : amps_(std::move(amps)) {
    const std::size_t d = amps_.size();
    if (d < 2 || !std::has_single_bit(d))
        throw DimensionMismatch("state dimension must be a power of two >= 2, got " + std::to_string(d));
    sites_ = std::countr_zero(d);
    if (sites_ > kMaxSites) throw ConfigError("state exceeds the 14-site dense storage cap");
}

StateVector StateVector::basis_state(int sites, std::uint64_t index) {
    if (sites < 1 || sites > kMaxSites) throw ConfigError("site count must be in 1..14");
    if (index >= (std::uint64_t{1} << sites))
        throw DimensionMismatch("basis index out of range for " + std::to_string(sites) + " sites");
    std::vector<cplx> amps(std::size_t{1} << sites, cplx(0.0, 0.0));
    amps[index] = cplx(1.0, 0.0);
    return StateVector(std::move(amps));
}

StateVector StateVector::all_down(int sites) { return basis_state(sites, 0); }

StateVector StateVector::normalized(std::vector<cplx> amplitudes) {
    StateVector s(std::move(amplitudes));
    const double n = s.norm();
    if (n < 1e-300) throw NumericalIntegrity("cannot normalize a zero state vector");
    kernels::active().scale(cplx(1.0 / n, 0.0), s.data(), s.dim());
    return s;
}

StateVector StateVector::raw(std::vector<cplx> amplitudes) { return StateVector(std::move(amplitudes)); }

double StateVector::norm_sq() const { return kernels::active().norm_sq(data(), dim()); }

double StateVector::norm() const { return std::sqrt(norm_sq()); }

cplx inner_product(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim())
        throw DimensionMismatch("inner product of states with dims " + std::to_string(a.dim()) +
                                " and " + std::to_string(b.dim()));
    return kernels::active().dot_conj(a.data(), b.data(), a.dim());
}

} // namespace floq
