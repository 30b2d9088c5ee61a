#pragma once

#include "floq/propagator.hpp"

#include <vector>

namespace floq {

/// <sigma^z_j> for site j in 1..L.
double magnetization(const StateVector& state, int site);

/// Connected nearest-neighbor correlator
/// C_{j,j+1} = <s^z_j s^z_{j+1}> - <s^z_j><s^z_{j+1}> for bond j in 1..L-1.
double correlation(const StateVector& state, int bond);

/// |<a|b>|^2.
double fidelity(const StateVector& a, const StateVector& b);

/// <prod_j sigma^z_j>; conserved by the chain Hamiltonians.
double parity_expectation(const StateVector& state);

/// Time-indexed magnetizations, bond correlators and fidelity to psi0.
struct ObservableSeries {
    int sites = 0;
    std::vector<double> times;               // units of 1/g
    std::vector<int> period_index;           // n when stroboscopic, else -1
    std::vector<std::vector<double>> sz;     // [sample][site]
    std::vector<std::vector<double>> corr;   // [sample][bond]
    std::vector<double> fidelity_to_initial; // empty if not tracked

    std::size_t size() const { return times.size(); }
    void append(double t, int n, const StateVector& state, const StateVector* reference);
};

/// Records every state of a stroboscopic trajectory (period T).
ObservableSeries series_from_states(const std::vector<StateVector>& states, double period);

/// chi_F scan output over an (Omega, t) grid.
struct SusceptibilityMap {
    std::vector<double> omegas;      // strictly increasing
    std::vector<double> times;       // strictly increasing
    std::vector<double> values;      // [omega][time], row-major
    std::vector<bool> one_sided;     // per omega: finite difference was one-sided
    double delta_omega = 0.0;

    double at(std::size_t io, std::size_t it) const { return values[io * times.size() + it]; }
    std::vector<double> max_over_time() const;
};

/// Drive whose base frequency is swept during a scan.
struct DriveTemplate {
    std::vector<int> multipliers;
    DriveAssignment at(double omega) const { return DriveAssignment{omega, multipliers}; }
};

/// chi_F(Omega, t) from central differences of the evolved state:
/// d = (psi(Omega+d) - psi(Omega-d)) / (2 dOmega) after aligning the
/// trajectory phases, then <d|d> - |<d|psi>|^2. Non-negative.
/// Falls back to a one-sided difference (flag set) when Omega - dOmega <= 0.
struct SusceptibilityValue {
    double value;
    bool one_sided;
};
SusceptibilityValue fidelity_susceptibility(const LatticeConfig& cfg, const DriveTemplate& tmpl,
                                            double omega, double t, double delta_omega,
                                            const PropagatorOptions& opts);

/// The finite-difference projector form on already evolved trajectory
/// states; `minus` is ignored when one_sided. Invariant under global
/// phases on any of the three states.
double susceptibility_from_states(const StateVector& minus, const StateVector& center,
                                  const StateVector& plus, double delta_omega, bool one_sided);

struct ScanGrid {
    double omega_min = 0.05;
    double omega_max = 6.0;
    double omega_step = 0.01;
    double t_max = 50.0;
    double t_step = 0.5;
    double delta_omega = 1e-3;

    void validate() const;
    std::vector<double> omega_points() const;
    std::vector<double> time_points() const;
};

/// Full heatmap; one triple of evolutions per Omega sample, samples reused
/// across the t grid. Omega samples are distributed over worker threads.
SusceptibilityMap fs_scan(const LatticeConfig& cfg, const DriveTemplate& tmpl,
                          const ScanGrid& grid, const PropagatorOptions& opts);

struct Peak {
    double omega;
    double height;
    double prominence;
};

/// Local maxima of max_t chi_F(Omega, .) ranked by height. Peaks with
/// prominence below `min_prominence_fraction` of the global maximum are
/// dropped, and of any two maxima closer than `min_separation` (units of
/// g) only the higher survives: a finite evolution window rings each
/// resonance with interference fringes that would otherwise each count.
std::vector<Peak> detect_peaks(const SusceptibilityMap& map,
                               double min_prominence_fraction = 0.05,
                               double min_separation = 0.6);

} // namespace floq
