#include "floq/analytic.hpp"
#include "floq/observables.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <fstream>

using namespace floq;

namespace {

nlohmann::json load_reference() {
    std::ifstream in(std::string(FLOQ_FIXTURES_DIR) + "/reference_values.json");
    REQUIRE(in.good());
    nlohmann::json j;
    in >> j;
    return j;
}

struct OracleDeviation {
    double sz12;
    double sz3;
};

// max over n <= 40 of the distance between the propagated magnetizations
// and the closed-form two-level values
OracleDeviation measure_deviation(double exchange) {
    const LatticeConfig cfg{3, 1.0, exchange};
    const DriveAssignment drive = make_drive(DrivePreset::OddBondsDouble, 3, 2.0);
    PropagatorOptions opts;
    opts.dt = 0.001;
    const UnitaryMatrix u = one_period_operator(cfg, drive, opts);
    const auto states = stroboscopic_evolve(StateVector::all_down(3), u, 40);
    OracleDeviation dev{0.0, 0.0};
    for (int n = 0; n <= 40; ++n) {
        const auto ana = analytic_magnetizations(n, exchange, 2.0);
        dev.sz12 = std::max(dev.sz12, std::abs(magnetization(states[n], 1) - ana[0]));
        dev.sz12 = std::max(dev.sz12, std::abs(magnetization(states[n], 2) - ana[1]));
        dev.sz3 = std::max(dev.sz3, std::abs(magnetization(states[n], 3) - ana[2]));
    }
    return dev;
}

} // namespace

TEST_CASE("closed-form magnetizations at stroboscopic times") {
    const auto start = analytic_magnetizations(0, 0.1, 2.0);
    CHECK(start[0] == doctest::Approx(-1.0));
    CHECK(start[1] == doctest::Approx(-1.0));
    CHECK(start[2] == doctest::Approx(-1.0));

    const auto flipped = analytic_magnetizations(10, 0.1, 2.0);
    CHECK(flipped[0] == doctest::Approx(1.0));
    CHECK(flipped[1] == doctest::Approx(1.0));
    CHECK(flipped[2] == doctest::Approx(-1.0));

    const auto quarter = analytic_magnetizations(5, 0.1, 2.0);
    CHECK(quarter[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(quarter[2] == doctest::Approx(-1.0));

    CHECK_THROWS_AS(analytic_magnetizations(-1, 0.1, 2.0), ConfigError);
}

TEST_CASE("closed-form bond correlation") {
    const double period = std::numbers::pi; // T at Omega0 = 2g
    CHECK(analytic_correlation(0.0, 0.1) == doctest::Approx(0.0));
    CHECK(analytic_correlation(5.0 * period, 0.1) == doctest::Approx(1.0));
    CHECK(analytic_correlation(10.0 * period, 0.1) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("subharmonic period ratios") {
    CHECK(subharmonic_period(0.1, 2.0).periods_ratio == doctest::Approx(20.0));
    CHECK(subharmonic_period(0.1, 2.0).t_prime == doctest::Approx(20.0 * std::numbers::pi));
    CHECK(subharmonic_period(0.05, 2.0).periods_ratio == doctest::Approx(40.0));
    CHECK(subharmonic_period(2.0, 2.0).periods_ratio == doctest::Approx(1.0));
    CHECK_THROWS_AS(subharmonic_period(0.0, 2.0), ConfigError);
}

TEST_CASE("numerics track the two-level oracle within the frozen bounds") {
    const nlohmann::json ref = load_reference();

    const OracleDeviation strong = measure_deviation(0.1);
    CHECK(strong.sz12 <= 0.05);
    CHECK(strong.sz3 <= 0.02);
    // and the deviation itself matches the independent integrator
    CHECK(strong.sz12 ==
          doctest::Approx(ref["trimer_J0_0.1"]["max_dev_sz12"].get<double>()).epsilon(0.02));
    CHECK(strong.sz3 ==
          doctest::Approx(ref["trimer_J0_0.1"]["max_dev_sz3"].get<double>()).epsilon(0.02));

    // halving J0 at least halves the averaged-Hamiltonian error
    const OracleDeviation weak = measure_deviation(0.05);
    CHECK(weak.sz12 <= strong.sz12 / 2.0);
    CHECK(weak.sz3 <= 0.02);
}
