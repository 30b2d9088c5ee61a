#pragma once

#include "floq/pauli.hpp"

#include <array>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace floq {

/// Open chain parameters. Energies and frequencies are in units of the
/// transverse field g, times in units of 1/g (g is conventionally 1).
struct LatticeConfig {
    int sites = 3;
    double field = 1.0;     // g
    double exchange = 0.1;  // J0

    void validate() const;

    /// The pair-resonance picture assumes the field dominates the exchange.
    bool high_field_regime() const { return field / exchange >= 5.0; }

    double pair_gap() const { return 4.0 * field; } // energy cost of one nearest-neighbor pair flip
};

/// Per-bond cosine drive: bond b = (j, j+1) oscillates at multiplier[b-1]
/// times the base frequency.
struct DriveAssignment {
    double base_frequency = 2.0; // Omega, units of g
    std::vector<int> multipliers; // L-1 entries, each >= 1

    double period() const { return 2.0 * std::numbers::pi / base_frequency; }

    void validate(int sites) const;

    /// Multipliers outside {1,2} work but leave validated territory.
    bool beyond_standard_multipliers() const;
};

enum class DrivePreset { Uniform, OddBondsDouble, EvenBondsDouble };

/// Uniform: every bond at the base frequency. OddBondsDouble: odd bonds at
/// twice the base (first harmonic when base = 2g), even bonds at the base.
/// EvenBondsDouble: the interchanged assignment.
DriveAssignment make_drive(DrivePreset preset, int sites, double base_frequency);

std::optional<DrivePreset> parse_preset(const std::string& name);
std::string preset_name(DrivePreset preset);

/// H(t) = g sum_j sigma^z_j + J0 sum_b cos(k_b Omega t) sigma^x_j sigma^x_{j+1}.
/// Bond coefficients are computed from the phase reduced into one period, so
/// the operator is exactly T-periodic whenever t/T is reduced losslessly.
SparsePauliOperator hamiltonian_at(double t, const LatticeConfig& cfg, const DriveAssignment& drive);

/// Bond drive coefficients J0 cos(k_b Omega t) at time t, in bond order.
std::vector<double> bond_coefficients_at(double t, const LatticeConfig& cfg,
                                         const DriveAssignment& drive);

enum class RotatingTermKind { PairCreate, PairAnnihilate, FlipFlop };

/// One term of the rotating-frame Hamiltonian: cos(drive_frequency t) *
/// e^{i phase_frequency t} * (ladder pair on the bond).
struct RotatingTerm {
    int bond = 1;                 // 1..L-1
    RotatingTermKind kind = RotatingTermKind::PairCreate;
    bool lowering_first = false;  // orientation of the flip-flop pair
    double phase_frequency = 0.0; // +4g, -4g, or 0
    double drive_frequency = 0.0; // k_b * Omega
};

/// Interaction picture with respect to the field term: each bond yields
/// four terms, pair terms carrying e^{+-i 4g t} phases.
std::vector<RotatingTerm> interaction_picture_terms(const LatticeConfig& cfg,
                                                    const DriveAssignment& drive);

/// A nonzero one-period average on a term that is not exactly resonant.
struct ResidualAverage {
    int bond;
    RotatingTermKind kind;
    cplx coefficient; // J0 * average, units of g
};

/// One-period average of the rotating-frame Hamiltonian. Bonds whose drive
/// matches the pair gap carry (J0/2)(raise raise + lower lower); averages
/// of everything else are either exact zeros or reported as residuals.
struct EffectiveHamiltonian {
    int sites = 0;
    double exchange = 0.0; // J0
    std::vector<int> pair_bonds;
    std::vector<int> flipflop_bonds;
    std::vector<ResidualAverage> residuals;

    bool empty() const { return pair_bonds.empty() && flipflop_bonds.empty(); }

    SparsePauliOperator to_operator() const;
};

/// Closed-form time average of interaction_picture_terms over one period.
/// Throws IncommensurateDrive when an average is nonzero but too small to
/// be a resonance (|avg| in (1e-9, 1e-3) * J0): near, not on, resonance.
EffectiveHamiltonian magnus_zeroth(const LatticeConfig& cfg, const DriveAssignment& drive);

/// Closed-form (1/T) integral of cos(a t) e^{i b t} over [0, T].
cplx one_period_average(double a, double b, double period);

struct TwoLevelMatrix {
    std::array<std::array<cplx, 2>, 2> elements{};
    bool coupled = false; // off-diagonals nonzero
};

/// <psi_a| H |psi_b> over a two-state basis.
TwoLevelMatrix two_level_matrix(const SparsePauliOperator& op, const StateVector& psi0,
                                const StateVector& psi1);

} // namespace floq
