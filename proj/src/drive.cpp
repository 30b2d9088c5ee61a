#include "floq/drive.hpp"

#include <cmath>
#include <numbers>

namespace floq {

namespace {
constexpr double kResonanceTol = 1e-9;   // on |k Omega - 4g|, units of g
constexpr double kZeroAverage = 1e-9;    // |avg| below this (x J0) is an exact zero
constexpr double kResidualFloor = 1e-3;  // |avg| above this (x J0) is a real residual
} // namespace

void LatticeConfig::validate() const {
    if (sites < 2 || sites > kMaxSites)
        throw ConfigError("chain length must be in 2..14, got " + std::to_string(sites));
    if (field <= 0.0) throw ConfigError("field g must be positive");
    if (exchange <= 0.0) throw ConfigError("exchange J0 must be positive");
}

void DriveAssignment::validate(int sites) const {
    if (base_frequency <= 0.0) throw ConfigError("drive base frequency must be positive");
    if (static_cast<int>(multipliers.size()) != sites - 1)
        throw ConfigError("drive needs exactly " + std::to_string(sites - 1) +
                          " bond multipliers, got " + std::to_string(multipliers.size()));
    for (int k : multipliers) {
        if (k < 1) throw ConfigError("bond multipliers must be >= 1");
    }
}

bool DriveAssignment::beyond_standard_multipliers() const {
    for (int k : multipliers) {
        if (k != 1 && k != 2) return true;
    }
    return false;
}

DriveAssignment make_drive(DrivePreset preset, int sites, double base_frequency) {
    DriveAssignment drive;
    drive.base_frequency = base_frequency;
    drive.multipliers.resize(static_cast<std::size_t>(sites - 1), 1);
    for (int b = 1; b <= sites - 1; ++b) {
        const bool odd = (b % 2) == 1;
        int k = 1;
        switch (preset) {
        case DrivePreset::Uniform:
            k = 1;
            break;
        case DrivePreset::OddBondsDouble:
            k = odd ? 2 : 1;
            break;
        case DrivePreset::EvenBondsDouble:
            k = odd ? 1 : 2;
            break;
        }
        drive.multipliers[static_cast<std::size_t>(b - 1)] = k;
    }
    return drive;
}

std::optional<DrivePreset> parse_preset(const std::string& name) {
    if (name == "uniform") return DrivePreset::Uniform;
    if (name == "odd-omega1-even-omega0") return DrivePreset::OddBondsDouble;
    if (name == "odd-omega0-even-omega1") return DrivePreset::EvenBondsDouble;
    return std::nullopt;
}

std::string preset_name(DrivePreset preset) {
    switch (preset) {
    case DrivePreset::Uniform:
        return "uniform";
    case DrivePreset::OddBondsDouble:
        return "odd-omega1-even-omega0";
    case DrivePreset::EvenBondsDouble:
        return "odd-omega0-even-omega1";
    }
    return "?";
}

std::vector<double> bond_coefficients_at(double t, const LatticeConfig& cfg,
                                         const DriveAssignment& drive) {
    cfg.validate();
    drive.validate(cfg.sites);
    if (t < 0.0) throw ConfigError("time must be non-negative");
    // Reduce t into one period before forming the phase so equal reduced
    // times give bit-equal coefficients.
    double u = t / drive.period();
    u -= std::floor(u);
    std::vector<double> coeffs(drive.multipliers.size());
    for (std::size_t b = 0; b < drive.multipliers.size(); ++b) {
        const double phase = 2.0 * std::numbers::pi * static_cast<double>(drive.multipliers[b]) * u;
        coeffs[b] = cfg.exchange * std::cos(phase);
    }
    return coeffs;
}

SparsePauliOperator hamiltonian_at(double t, const LatticeConfig& cfg,
                                   const DriveAssignment& drive) {
    const std::vector<double> coeffs = bond_coefficients_at(t, cfg, drive);
    SparsePauliOperator op(cfg.sites);
    for (int j = 1; j <= cfg.sites; ++j) op.add_z(j, cfg.field);
    for (std::size_t b = 0; b < coeffs.size(); ++b) {
        op.add_xx(static_cast<int>(b) + 1, coeffs[b]);
    }
    return op;
}

std::vector<RotatingTerm> interaction_picture_terms(const LatticeConfig& cfg,
                                                    const DriveAssignment& drive) {
    cfg.validate();
    drive.validate(cfg.sites);
    std::vector<RotatingTerm> terms;
    terms.reserve(4 * drive.multipliers.size());
    const double gap = cfg.pair_gap();
    for (std::size_t b = 0; b < drive.multipliers.size(); ++b) {
        const int bond = static_cast<int>(b) + 1;
        const double drive_freq = drive.multipliers[b] * drive.base_frequency;
        terms.push_back({bond, RotatingTermKind::PairCreate, false, gap, drive_freq});
        terms.push_back({bond, RotatingTermKind::PairAnnihilate, false, -gap, drive_freq});
        terms.push_back({bond, RotatingTermKind::FlipFlop, false, 0.0, drive_freq});
        terms.push_back({bond, RotatingTermKind::FlipFlop, true, 0.0, drive_freq});
    }
    return terms;
}

cplx one_period_average(double a, double b, double period) {
    // (1/T) int cos(a t) e^{i b t} dt = (D(a+b) + D(b-a)) / 2 with
    // D(c) = (e^{i c T} - 1) / (i c T), D(0) = 1.
    const auto dc = [period](double c) -> cplx {
        const double x = c * period;
        if (std::abs(x) < 1e-12) {
            // series around 0: 1 + ix/2 - x^2/6
            return cplx(1.0 - x * x / 6.0, x / 2.0);
        }
        const cplx num = std::polar(1.0, x) - cplx(1.0, 0.0);
        return num / cplx(0.0, x);
    };
    return 0.5 * (dc(a + b) + dc(b - a));
}

EffectiveHamiltonian magnus_zeroth(const LatticeConfig& cfg, const DriveAssignment& drive) {
    EffectiveHamiltonian eff;
    eff.sites = cfg.sites;
    eff.exchange = cfg.exchange;
    const double period = drive.period();

    for (const RotatingTerm& term : interaction_picture_terms(cfg, drive)) {
        const bool pair_kind = term.kind != RotatingTermKind::FlipFlop;
        const double detuning = term.drive_frequency - std::abs(term.phase_frequency);
        if (pair_kind && std::abs(detuning) <= kResonanceTol * cfg.field) {
            // On resonance the counter-phased component integrates to zero
            // and the co-phased one to exactly 1/2.
            if (term.kind == RotatingTermKind::PairCreate) eff.pair_bonds.push_back(term.bond);
            continue;
        }
        if (!pair_kind && term.drive_frequency == 0.0) {
            if (!term.lowering_first) eff.flipflop_bonds.push_back(term.bond);
            continue;
        }
        const cplx avg = one_period_average(term.drive_frequency, term.phase_frequency, period);
        const double mag = std::abs(avg);
        if (mag <= kZeroAverage) continue;
        if (mag < kResidualFloor) {
            throw IncommensurateDrive(
                "bond " + std::to_string(term.bond) + " averages to " + std::to_string(mag) +
                " x J0 over one period: drive is near, but not on, a resonance");
        }
        if (term.kind == RotatingTermKind::PairAnnihilate ||
            (term.kind == RotatingTermKind::FlipFlop && term.lowering_first)) {
            continue; // Hermitian partner of a recorded residual
        }
        eff.residuals.push_back({term.bond, term.kind, cfg.exchange * avg});
    }
    return eff;
}

SparsePauliOperator EffectiveHamiltonian::to_operator() const {
    SparsePauliOperator op(sites);
    const cplx half(exchange / 2.0, 0.0);
    for (int bond : pair_bonds) {
        op.add_ladder_pair(bond, SiteAction::Raise, SiteAction::Raise, half);
        op.add_ladder_pair(bond, SiteAction::Lower, SiteAction::Lower, half);
    }
    for (int bond : flipflop_bonds) {
        op.add_ladder_pair(bond, SiteAction::Raise, SiteAction::Lower, half);
        op.add_ladder_pair(bond, SiteAction::Lower, SiteAction::Raise, half);
    }
    return op;
}

TwoLevelMatrix two_level_matrix(const SparsePauliOperator& op, const StateVector& psi0,
                                const StateVector& psi1) {
    const StateVector h0 = apply_operator(op, psi0);
    const StateVector h1 = apply_operator(op, psi1);
    TwoLevelMatrix out;
    out.elements[0][0] = inner_product(psi0, h0);
    out.elements[0][1] = inner_product(psi0, h1);
    out.elements[1][0] = inner_product(psi1, h0);
    out.elements[1][1] = inner_product(psi1, h1);
    double scale = 0.0;
    for (const auto& term : op.terms()) scale = std::max(scale, std::abs(term.coefficient));
    const double floor = 1e-12 * std::max(scale, 1.0);
    out.coupled = std::abs(out.elements[0][1]) > floor || std::abs(out.elements[1][0]) > floor;
    return out;
}

} // namespace floq
