#include "floq/observables.hpp"

#include "floq/kernels.hpp"
#include "floq/parallel.hpp"

#include <bit>
#include <cmath>

namespace floq {

double magnetization(const StateVector& state, int site) {
    if (site < 1 || site > state.sites())
        throw SiteOutOfRange("site " + std::to_string(site) + " outside 1.." +
                             std::to_string(state.sites()));
    const std::uint64_t bit = std::uint64_t{1} << (site - 1);
    double m = 0.0;
    for (std::size_t i = 0; i < state.dim(); ++i) {
        const double w = std::norm(state[i]);
        m += (i & bit) ? w : -w;
    }
    return m;
}

double correlation(const StateVector& state, int bond) {
    if (bond < 1 || bond > state.sites() - 1)
        throw SiteOutOfRange("bond " + std::to_string(bond) + " outside 1.." +
                             std::to_string(state.sites() - 1));
    const std::uint64_t bl = std::uint64_t{1} << (bond - 1);
    const std::uint64_t br = bl << 1;
    double zl = 0.0, zr = 0.0, zz = 0.0;
    for (std::size_t i = 0; i < state.dim(); ++i) {
        const double w = std::norm(state[i]);
        const double ml = (i & bl) ? 1.0 : -1.0;
        const double mr = (i & br) ? 1.0 : -1.0;
        zl += w * ml;
        zr += w * mr;
        zz += w * ml * mr;
    }
    return zz - zl * zr;
}

double fidelity(const StateVector& a, const StateVector& b) {
    const cplx overlap = inner_product(a, b);
    return std::norm(overlap);
}

double parity_expectation(const StateVector& state) {
    double p = 0.0;
    const int sites = state.sites();
    for (std::size_t i = 0; i < state.dim(); ++i) {
        const double w = std::norm(state[i]);
        p += ((sites - std::popcount(i)) & 1) ? -w : w;
    }
    return p;
}

void ObservableSeries::append(double t, int n, const StateVector& state,
                              const StateVector* reference) {
    if (sites == 0) sites = state.sites();
    if (sites != state.sites()) throw DimensionMismatch("series collected over mixed chain sizes");
    times.push_back(t);
    period_index.push_back(n);
    std::vector<double> z(static_cast<std::size_t>(sites));
    for (int j = 1; j <= sites; ++j) z[static_cast<std::size_t>(j - 1)] = magnetization(state, j);
    sz.push_back(std::move(z));
    std::vector<double> c(static_cast<std::size_t>(sites - 1));
    for (int j = 1; j <= sites - 1; ++j) c[static_cast<std::size_t>(j - 1)] = correlation(state, j);
    corr.push_back(std::move(c));
    if (reference != nullptr) fidelity_to_initial.push_back(fidelity(*reference, state));
}

ObservableSeries series_from_states(const std::vector<StateVector>& states, double period) {
    ObservableSeries series;
    if (states.empty()) return series;
    const StateVector& ref = states.front();
    for (std::size_t n = 0; n < states.size(); ++n) {
        series.append(static_cast<double>(n) * period, static_cast<int>(n), states[n], &ref);
    }
    return series;
}

std::vector<double> SusceptibilityMap::max_over_time() const {
    std::vector<double> profile(omegas.size(), 0.0);
    for (std::size_t io = 0; io < omegas.size(); ++io) {
        double m = 0.0;
        for (std::size_t it = 0; it < times.size(); ++it) m = std::max(m, at(io, it));
        profile[io] = m;
    }
    return profile;
}

// Relative phases are fixed so that <psi|psi+-> is real non-negative before
// differencing; the finite difference is then insensitive to any global
// phase on either trajectory.
double susceptibility_from_states(const StateVector& minus, const StateVector& center,
                                  const StateVector& plus, double delta_omega, bool one_sided) {
    const auto& k = kernels::active();
    const std::size_t dim = center.dim();
    const auto align_phase = [&](const StateVector& s) -> cplx {
        const cplx c = inner_product(center, s);
        const double mag = std::abs(c);
        return mag < 1e-300 ? cplx(1.0, 0.0) : std::conj(c) / mag;
    };
    std::vector<cplx> d(dim, cplx(0.0, 0.0));
    if (one_sided) {
        const cplx phase_p = align_phase(plus);
        k.axpy(phase_p / delta_omega, plus.data(), d.data(), dim);
        k.axpy(cplx(-1.0 / delta_omega, 0.0), center.data(), d.data(), dim);
    } else {
        const cplx phase_p = align_phase(plus);
        const cplx phase_m = align_phase(minus);
        k.axpy(phase_p / (2.0 * delta_omega), plus.data(), d.data(), dim);
        k.axpy(-phase_m / (2.0 * delta_omega), minus.data(), d.data(), dim);
    }
    const double dd = k.norm_sq(d.data(), dim);
    const cplx dpsi = k.dot_conj(d.data(), center.data(), dim);
    return dd - std::norm(dpsi);
}

SusceptibilityValue fidelity_susceptibility(const LatticeConfig& cfg, const DriveTemplate& tmpl,
                                            double omega, double t, double delta_omega,
                                            const PropagatorOptions& opts) {
    if (delta_omega <= 0.0) throw ConfigError("delta_omega must be positive");
    if (omega <= 0.0) throw ConfigError("omega must be positive");
    if (t < 0.0) throw ConfigError("time must be non-negative");
    const bool one_sided = omega - delta_omega <= 0.0;

    StateVector center = StateVector::all_down(cfg.sites);
    StateVector plus = center;
    StateVector minus = center;

    TrajectoryEvolver ec(cfg, tmpl.at(omega), opts);
    TrajectoryEvolver ep(cfg, tmpl.at(omega + delta_omega), opts);
    ec.advance(center, 0.0, t);
    ep.advance(plus, 0.0, t);
    if (!one_sided) {
        TrajectoryEvolver em(cfg, tmpl.at(omega - delta_omega), opts);
        em.advance(minus, 0.0, t);
    }
    return {susceptibility_from_states(minus, center, plus, delta_omega, one_sided), one_sided};
}

void ScanGrid::validate() const {
    if (omega_min <= 0.0) throw ConfigError("scan omega_min must be positive");
    if (omega_max < omega_min) throw ConfigError("scan omega_max must be >= omega_min");
    if (omega_max > omega_min && omega_step <= 0.0)
        throw ConfigError("scan omega_step must be positive");
    if (t_max < 0.0) throw ConfigError("scan t_max must be non-negative");
    if (delta_omega <= 0.0) throw ConfigError("scan delta_omega must be positive");
}

std::vector<double> ScanGrid::omega_points() const {
    if (omega_max <= omega_min) return {omega_min};
    std::vector<double> pts;
    const auto count = static_cast<std::size_t>((omega_max - omega_min) / omega_step + 1e-9) + 1;
    pts.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        pts.push_back(omega_min + static_cast<double>(i) * omega_step);
    }
    return pts;
}

std::vector<double> ScanGrid::time_points() const {
    if (t_step <= 0.0 || t_max == 0.0) return {t_max};
    std::vector<double> pts;
    const auto count = static_cast<std::size_t>(t_max / t_step + 1e-9) + 1;
    pts.reserve(count + 1);
    for (std::size_t i = 0; i < count; ++i) pts.push_back(static_cast<double>(i) * t_step);
    if (pts.back() < t_max - 1e-9 * std::max(1.0, t_max)) pts.push_back(t_max);
    return pts;
}

SusceptibilityMap fs_scan(const LatticeConfig& cfg, const DriveTemplate& tmpl,
                          const ScanGrid& grid, const PropagatorOptions& opts) {
    grid.validate();
    cfg.validate();
    SusceptibilityMap map;
    map.omegas = grid.omega_points();
    map.times = grid.time_points();
    map.delta_omega = grid.delta_omega;
    map.values.assign(map.omegas.size() * map.times.size(), 0.0);
    map.one_sided.assign(map.omegas.size(), false);

    const std::size_t threads = opts.threads ? opts.threads : default_thread_count();
    parallel_for(map.omegas.size(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t io = begin; io < end; ++io) {
            const double omega = map.omegas[io];
            const bool one_sided = omega - grid.delta_omega <= 0.0;
            map.one_sided[io] = one_sided;

            StateVector center = StateVector::all_down(cfg.sites);
            StateVector plus = center;
            StateVector minus = center;
            TrajectoryEvolver ec(cfg, tmpl.at(omega), opts);
            TrajectoryEvolver ep(cfg, tmpl.at(omega + grid.delta_omega), opts);
            std::optional<TrajectoryEvolver> em;
            if (!one_sided) em.emplace(cfg, tmpl.at(omega - grid.delta_omega), opts);

            double t_prev = 0.0;
            for (std::size_t it = 0; it < map.times.size(); ++it) {
                const double t = map.times[it];
                if (t > t_prev) {
                    ec.advance(center, t_prev, t);
                    ep.advance(plus, t_prev, t);
                    if (em) em->advance(minus, t_prev, t);
                    t_prev = t;
                }
                map.values[io * map.times.size() + it] =
                    t == 0.0 ? 0.0
                             : susceptibility_from_states(minus, center, plus,
                                                          grid.delta_omega, one_sided);
            }
        }
    });
    return map;
}

std::vector<Peak> detect_peaks(const SusceptibilityMap& map, double min_prominence_fraction,
                               double min_separation) {
    const std::vector<double> p = map.max_over_time();
    std::vector<Peak> peaks;
    if (p.size() < 3) return peaks;
    double global_max = 0.0;
    for (double v : p) global_max = std::max(global_max, v);
    if (global_max <= 0.0) return peaks;

    for (std::size_t i = 1; i + 1 < p.size();) {
        if (!(p[i] > p[i - 1])) {
            ++i;
            continue;
        }
        // allow flat tops: scan to the end of the equal run
        std::size_t j = i;
        while (j + 1 < p.size() && p[j + 1] == p[i]) ++j;
        if (j + 1 >= p.size() || !(p[j + 1] < p[i])) {
            i = j + 1;
            continue;
        }
        // prominence: lowest descent before higher ground on each side
        double left_min = p[i];
        for (std::size_t k = i; k-- > 0;) {
            if (p[k] > p[i]) break;
            left_min = std::min(left_min, p[k]);
        }
        double right_min = p[i];
        for (std::size_t k = j + 1; k < p.size(); ++k) {
            if (p[k] > p[i]) break;
            right_min = std::min(right_min, p[k]);
        }
        const double prominence = p[i] - std::max(left_min, right_min);
        if (prominence >= min_prominence_fraction * global_max) {
            const std::size_t mid = (i + j) / 2;
            peaks.push_back({map.omegas[mid], p[i], prominence});
        }
        i = j + 1;
    }
    std::sort(peaks.begin(), peaks.end(),
              [](const Peak& a, const Peak& b) { return a.height > b.height; });
    // greedy fringe suppression: highest first, drop anything closer than
    // min_separation to an already accepted peak
    std::vector<Peak> merged;
    for (const Peak& cand : peaks) {
        bool shadowed = false;
        for (const Peak& kept : merged) {
            if (std::abs(cand.omega - kept.omega) < min_separation) {
                shadowed = true;
                break;
            }
        }
        if (!shadowed) merged.push_back(cand);
    }
    return merged;
}

} // namespace floq
