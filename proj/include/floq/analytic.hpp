#pragma once

#include <array>

namespace floq {

// Closed-form three-spin results from the averaged two-level dynamics
// (pair term on the first bond, third spin blocked). Used as the
// independent oracle for the numerical propagation.

/// (<s^z_1>, <s^z_2>, <s^z_3>) at stroboscopic time n T:
/// (-cos(2 pi J0 n / Omega0), same, -1).
std::array<double, 3> analytic_magnetizations(int n, double exchange, double omega0);

/// C_{1,2}(t) = sin^2(J0 t); C_{2,3} stays 0.
double analytic_correlation(double t, double exchange);

struct SubharmonicPeriod {
    double t_prime;        // 2 pi / J0
    double periods_ratio;  // T' / T = Omega0 / J0
};

SubharmonicPeriod subharmonic_period(double exchange, double omega0);

} // namespace floq
