#include "floq/protocol.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

namespace floq {

int default_m(const LatticeConfig& cfg, bool strict) {
    cfg.validate();
    const double omega0 = 2.0 * cfg.field;
    const double ratio = omega0 / (2.0 * cfg.exchange);
    const double rounded = std::round(ratio);
    if (std::abs(ratio - rounded) > 1e-6) {
        if (strict) {
            throw NonIntegerRatio("block ratio Omega0/(2 J0) = " + std::to_string(ratio) +
                                  " is not an integer; non-integer blocks accumulate phase "
                                  "errors over the run");
        }
        std::cerr << "warning: block ratio " << ratio << " is not an integer; rounding to "
                  << rounded << " accumulates phase errors over long runs\n";
    }
    if (rounded < 1.0) throw ConfigError("block ratio must be at least 1");
    return static_cast<int>(rounded);
}

std::string default_steering_sequence() { return "1,2,1,2,1,1,2,1,2,1"; }

ProtocolSequence compile_sequence(const std::string& text, int periods_per_block) {
    if (periods_per_block < 1) throw ConfigError("periods per block must be >= 1");
    ProtocolSequence seq;
    seq.periods_per_block = periods_per_block;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        // trim surrounding spaces
        const auto first = token.find_first_not_of(" \t");
        const auto last = token.find_last_not_of(" \t");
        if (first == std::string::npos) throw ConfigError("empty token in block sequence");
        token = token.substr(first, last - first + 1);
        if (token == "1") {
            seq.blocks.push_back(1);
        } else if (token == "2") {
            seq.blocks.push_back(2);
        } else {
            throw ConfigError("block sequence tokens must be 1 or 2, got '" + token + "'");
        }
    }
    if (seq.blocks.empty()) throw ConfigError("block sequence must not be empty");
    return seq;
}

ObservableSeries run_protocol(const StateVector& psi0, const UnitaryMatrix& u1,
                              const UnitaryMatrix& u2, const ProtocolSequence& seq,
                              double period) {
    if (u1.dim() != u2.dim()) throw DimensionMismatch("the two period operators differ in dim");
    if (psi0.dim() != u1.dim()) throw DimensionMismatch("state dim vs operator dim");
    if (period <= 0.0) throw ConfigError("period must be positive");
    if (seq.blocks.empty()) throw ConfigError("block sequence must not be empty");

    ObservableSeries series;
    StateVector state = psi0;
    int n = 0;
    series.append(0.0, 0, state, &psi0);
    for (int block : seq.blocks) {
        const UnitaryMatrix& u = block == 1 ? u1 : u2;
        for (int rep = 0; rep < seq.periods_per_block; ++rep) {
            state = u.apply(state);
            ++n;
            if (std::abs(state.norm() - 1.0) > 1e-7) {
                throw NumericalIntegrity("state norm drifted beyond 1e-7 at period " +
                                         std::to_string(n));
            }
            series.append(static_cast<double>(n) * period, n, state, &psi0);
        }
    }
    return series;
}

double mirror_check(const ObservableSeries& series1, const ObservableSeries& series2, int sites) {
    if (series1.size() != series2.size() || series1.sites != series2.sites ||
        series1.sites != sites) {
        throw DimensionMismatch("mirror check needs equal-shape series over the same chain");
    }
    const int bonds = sites - 1;
    double worst = 0.0;
    for (std::size_t s = 0; s < series1.size(); ++s) {
        for (int j = 1; j <= bonds; ++j) {
            const double a = series1.corr[s][static_cast<std::size_t>(j - 1)];
            const double b = series2.corr[s][static_cast<std::size_t>(sites - j - 1)];
            worst = std::max(worst, std::abs(a - b));
        }
    }
    return worst;
}

} // namespace floq
