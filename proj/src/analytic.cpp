#include "floq/analytic.hpp"

#include "floq/errors.hpp"

#include <cmath>
#include <numbers>

namespace floq {

std::array<double, 3> analytic_magnetizations(int n, double exchange, double omega0) {
    if (n < 0) throw ConfigError("period count must be non-negative");
    const double phase = 2.0 * std::numbers::pi * exchange * static_cast<double>(n) / omega0;
    const double mz = -std::cos(phase);
    return {mz, mz, -1.0};
}

double analytic_correlation(double t, double exchange) {
    if (t < 0.0) throw ConfigError("time must be non-negative");
    const double s = std::sin(exchange * t);
    return s * s;
}

SubharmonicPeriod subharmonic_period(double exchange, double omega0) {
    if (exchange <= 0.0) throw ConfigError("exchange must be positive");
    return {2.0 * std::numbers::pi / exchange, omega0 / exchange};
}

} // namespace floq
