#include "floq/drive.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace floq;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent check of the closed-form averages: composite Simpson
// quadrature of (1/T) int cos(a t) e^{i b t} dt.
cplx quadrature_average(double a, double b, double period, int intervals = 40000) {
    const double h = period / intervals;
    cplx sum(0.0, 0.0);
    for (int i = 0; i <= intervals; ++i) {
        const double t = i * h;
        const double w = (i == 0 || i == intervals) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        sum += w * std::cos(a * t) * std::polar(1.0, b * t);
    }
    return sum * (h / 3.0) / period;
}

// Site-reversal permutation of a basis index over `sites` bits.
std::uint64_t reverse_sites(std::uint64_t index, int sites) {
    std::uint64_t out = 0;
    for (int j = 0; j < sites; ++j) {
        if (index & (std::uint64_t{1} << j)) out |= std::uint64_t{1} << (sites - 1 - j);
    }
    return out;
}

StateVector random_state(std::mt19937& rng, int sites) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<cplx> amps(std::size_t{1} << sites);
    for (auto& z : amps) z = cplx(dist(rng), dist(rng));
    return StateVector::normalized(std::move(amps));
}

StateVector permute_sites(const StateVector& s, int sites) {
    std::vector<cplx> amps(s.dim());
    for (std::size_t i = 0; i < s.dim(); ++i) amps[reverse_sites(i, sites)] = s[i];
    return StateVector::raw(std::move(amps));
}

const LatticeConfig kTrimer{3, 1.0, 0.1};

} // namespace

TEST_CASE("configs validate their invariants") {
    CHECK_THROWS_AS((LatticeConfig{1, 1.0, 0.1}).validate(), ConfigError);
    CHECK_THROWS_AS((LatticeConfig{3, 1.0, -0.1}).validate(), ConfigError);
    CHECK((LatticeConfig{3, 1.0, 0.1}).high_field_regime());
    CHECK_FALSE((LatticeConfig{3, 1.0, 0.5}).high_field_regime());

    DriveAssignment d{2.0, {2, 1}};
    CHECK_NOTHROW(d.validate(3));
    CHECK_THROWS_AS(d.validate(4), ConfigError);
    CHECK_THROWS_AS((DriveAssignment{2.0, {0, 1}}).validate(3), ConfigError);
    CHECK_THROWS_AS((DriveAssignment{-1.0, {1, 1}}).validate(3), ConfigError);
    CHECK_FALSE(d.beyond_standard_multipliers());
    CHECK(DriveAssignment{2.0, {3, 1}}.beyond_standard_multipliers());
}

TEST_CASE("drive presets lay out the interleaved multiplier patterns") {
    CHECK(make_drive(DrivePreset::Uniform, 5, 2.0).multipliers == std::vector<int>{1, 1, 1, 1});
    CHECK(make_drive(DrivePreset::OddBondsDouble, 5, 2.0).multipliers ==
          std::vector<int>{2, 1, 2, 1});
    CHECK(make_drive(DrivePreset::EvenBondsDouble, 5, 2.0).multipliers ==
          std::vector<int>{1, 2, 1, 2});
    CHECK(make_drive(DrivePreset::OddBondsDouble, 3, 2.0).multipliers == std::vector<int>{2, 1});
    CHECK(parse_preset("uniform").has_value());
    CHECK(parse_preset("odd-omega1-even-omega0") == DrivePreset::OddBondsDouble);
    CHECK_FALSE(parse_preset("nonsense").has_value());
}

TEST_CASE("hamiltonian_at evaluates bond coefficients from the reduced phase") {
    const DriveAssignment paper = make_drive(DrivePreset::OddBondsDouble, 3, 2.0);
    const double period = paper.period();

    const auto at0 = bond_coefficients_at(0.0, kTrimer, paper);
    CHECK(at0[0] == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(at0[1] == doctest::Approx(0.1).epsilon(1e-14));

    // k = 2 bond at a quarter period: cos(2 Omega T/4) = cos(pi) = -1
    const auto quarter = bond_coefficients_at(period / 4.0, kTrimer, paper);
    CHECK(quarter[0] == doctest::Approx(-0.1).epsilon(1e-14));

    const DriveAssignment uni = make_drive(DrivePreset::Uniform, 3, 2.0);
    const auto uq = bond_coefficients_at(uni.period() / 4.0, kTrimer, uni);
    CHECK(std::abs(uq[0]) < 1e-15);
    CHECK(std::abs(uq[1]) < 1e-15);

    CHECK_THROWS_AS(bond_coefficients_at(-1.0, kTrimer, paper), ConfigError);
}

TEST_CASE("hamiltonian_at is exactly periodic once the phase reduction is lossless") {
    // with Omega = 2 pi the period is exactly 1.0, and the dyadic times
    // below reduce into [0, 1) without any rounding
    const DriveAssignment d{2.0 * kPi, {2, 1}};
    for (double t : {0.25, 0.3125, 12.25, 1000.125}) {
        const auto c1 = bond_coefficients_at(t, kTrimer, d);
        const auto c2 = bond_coefficients_at(t + 1.0, kTrimer, d);
        CHECK(c1[0] == c2[0]);
        CHECK(c1[1] == c2[1]);
    }
    // at the physical base frequency the reduction still keeps it periodic
    // to rounding
    const DriveAssignment paper = make_drive(DrivePreset::OddBondsDouble, 3, 2.0);
    const auto a = bond_coefficients_at(0.4, kTrimer, paper);
    const auto b = bond_coefficients_at(0.4 + paper.period(), kTrimer, paper);
    CHECK(std::abs(a[0] - b[0]) < 1e-14);
    CHECK(std::abs(a[1] - b[1]) < 1e-14);
}

TEST_CASE("interaction picture terms carry the pair phases") {
    const DriveAssignment paper = make_drive(DrivePreset::OddBondsDouble, 3, 2.0);
    const auto terms = interaction_picture_terms(kTrimer, paper);
    REQUIRE(terms.size() == 8); // 4 per bond

    // bond 1 pair-create: phase +4g, drive 2 Omega
    CHECK(terms[0].bond == 1);
    CHECK(terms[0].kind == RotatingTermKind::PairCreate);
    CHECK(terms[0].phase_frequency == doctest::Approx(4.0));
    CHECK(terms[0].drive_frequency == doctest::Approx(4.0)); // 2 * Omega0

    int flipflops = 0;
    for (const auto& t : terms) {
        if (t.kind == RotatingTermKind::FlipFlop) {
            ++flipflops;
            CHECK(t.phase_frequency == 0.0);
        }
    }
    CHECK(flipflops == 4);

    const LatticeConfig big{10, 1.0, 0.1};
    const DriveAssignment interleaved = make_drive(DrivePreset::OddBondsDouble, 10, 2.0);
    CHECK(interaction_picture_terms(big, interleaved).size() == 36);
}

TEST_CASE("magnus_zeroth keeps exactly the resonant pair terms") {
    const DriveAssignment paper = make_drive(DrivePreset::OddBondsDouble, 3, 2.0);
    const EffectiveHamiltonian eff = magnus_zeroth(kTrimer, paper);
    CHECK(eff.pair_bonds == std::vector<int>{1});
    CHECK(eff.flipflop_bonds.empty());
    CHECK(eff.residuals.empty());

    const SparsePauliOperator op = eff.to_operator();
    REQUIRE(op.term_count() == 2);
    for (const auto& term : op.terms()) {
        CHECK(term.coefficient == cplx(0.05, 0.0)); // exactly J0/2
    }

    const LatticeConfig big{10, 1.0, 0.1};
    const EffectiveHamiltonian odd = magnus_zeroth(big, make_drive(DrivePreset::OddBondsDouble, 10, 2.0));
    CHECK(odd.pair_bonds == std::vector<int>{1, 3, 5, 7, 9});
    const EffectiveHamiltonian even =
        magnus_zeroth(big, make_drive(DrivePreset::EvenBondsDouble, 10, 2.0));
    CHECK(even.pair_bonds == std::vector<int>{2, 4, 6, 8});
}

TEST_CASE("off-resonant incommensurate drives average away or get flagged") {
    // Omega = 3g: every pair average is nonzero over one period but far from
    // resonance, so it is reported as a residual, not an operator term
    const DriveAssignment off = make_drive(DrivePreset::Uniform, 3, 3.0);
    const EffectiveHamiltonian eff = magnus_zeroth(kTrimer, off);
    CHECK(eff.empty());
    CHECK_FALSE(eff.residuals.empty());
    for (const auto& r : eff.residuals) {
        const cplx quad =
            kTrimer.exchange * quadrature_average(off.base_frequency,
                                                  r.kind == RotatingTermKind::PairCreate ? 4.0 : -4.0,
                                                  off.period());
        CHECK(std::abs(r.coefficient - quad) < 1e-8 * kTrimer.exchange);
    }

    // barely detuned from a commensurate zero: ambiguous band
    const DriveAssignment near{2.0 * (1.0 + 1e-5), {1, 1}};
    CHECK_THROWS_AS(magnus_zeroth(kTrimer, near), IncommensurateDrive);
}

TEST_CASE("closed-form averages match numerical quadrature for the standard drives") {
    for (const auto preset :
         {DrivePreset::Uniform, DrivePreset::OddBondsDouble, DrivePreset::EvenBondsDouble}) {
        for (double omega : {2.0, 4.0}) {
            const DriveAssignment drive = make_drive(preset, 4, omega);
            const LatticeConfig cfg{4, 1.0, 0.1};
            for (const RotatingTerm& term : interaction_picture_terms(cfg, drive)) {
                const cplx closed = one_period_average(term.drive_frequency, term.phase_frequency,
                                                       drive.period());
                const cplx quad = quadrature_average(term.drive_frequency, term.phase_frequency,
                                                     drive.period());
                CHECK(std::abs(cfg.exchange * (closed - quad)) < 1e-8 * cfg.exchange);
            }
        }
    }
}

TEST_CASE("two_level_matrix reproduces the averaged pair block") {
    const EffectiveHamiltonian eff = magnus_zeroth(kTrimer, make_drive(DrivePreset::OddBondsDouble, 3, 2.0));
    const StateVector psi0 = StateVector::all_down(3);
    const StateVector psi1 = StateVector::basis_state(3, 3); // |up up down>
    const TwoLevelMatrix m = two_level_matrix(eff.to_operator(), psi0, psi1);
    CHECK(m.coupled);
    CHECK(std::abs(m.elements[0][0]) < 1e-15);
    CHECK(std::abs(m.elements[1][1]) < 1e-15);
    CHECK(std::abs(m.elements[0][1] - cplx(0.05, 0.0)) < 1e-15);
    CHECK(std::abs(m.elements[1][0] - cplx(0.05, 0.0)) < 1e-15);

    // a state outside the operator's support is flagged as uncoupled
    const StateVector psi_far = StateVector::basis_state(3, 6); // |down up up>
    const TwoLevelMatrix far = two_level_matrix(eff.to_operator(), psi0, psi_far);
    CHECK_FALSE(far.coupled);
    CHECK(std::abs(far.elements[0][1]) < 1e-15);
}

TEST_CASE("site reversal maps the two interleaved assignments onto each other (odd L)") {
    std::mt19937 rng(3);
    for (int sites : {3, 5}) {
        const LatticeConfig cfg{sites, 1.0, 0.1};
        const DriveAssignment d1 = make_drive(DrivePreset::OddBondsDouble, sites, 2.0);
        const DriveAssignment d2 = make_drive(DrivePreset::EvenBondsDouble, sites, 2.0);
        for (double t : {0.0, 0.37, 1.21}) {
            const SparsePauliOperator h1 = hamiltonian_at(t, cfg, d1);
            const SparsePauliOperator h2 = hamiltonian_at(t, cfg, d2);
            const StateVector a = random_state(rng, sites);
            // P^dag H1 P acting like H2: H1 (P a) must equal P (H2 a)
            const StateVector lhs = apply_operator(h1, permute_sites(a, sites));
            const StateVector rhs = permute_sites(apply_operator(h2, a), sites);
            for (std::size_t i = 0; i < lhs.dim(); ++i) {
                CHECK(std::abs(lhs[i] - rhs[i]) < 1e-14);
            }
        }
    }
}
