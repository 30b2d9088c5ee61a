#include "floq/propagator.hpp"

#include "floq/kernels.hpp"
#include "floq/parallel.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <numbers>

namespace floq {

std::optional<StepMethod> parse_method(const std::string& name) {
    if (name == "midpoint" || name == "midpoint-exponential") return StepMethod::MidpointExponential;
    if (name == "rk4") return StepMethod::Rk4;
    return std::nullopt;
}

std::string method_name(StepMethod method) {
    return method == StepMethod::MidpointExponential ? "midpoint-exponential" : "rk4";
}

void PropagatorOptions::validate() const {
    if (!(dt > 0.0)) throw ConfigError("dt must be positive");
    if (dt > 0.01 + 1e-15) throw ConfigError("dt is capped at 0.01/g");
    if (series_order < 4 || series_order > 40)
        throw ConfigError("series order must be in 4..40");
}

namespace {

constexpr double kStepNormDriftTol = 5e-13; // per-step |norm - previous norm|

struct Bond {
    std::uint64_t mask;
    int low_bit; // lower site bit of the pair
    int multiplier;
};

struct CompiledDrive {
    int sites = 0;
    std::size_t dim = 0;
    double field = 0.0;
    double exchange = 0.0;
    double omega = 0.0;
    double period = 0.0;
    std::vector<double> diag; // field * (2 popcount - L)
    std::vector<Bond> bonds;
};

CompiledDrive compile_drive(const LatticeConfig& cfg, const DriveAssignment& drive) {
    cfg.validate();
    drive.validate(cfg.sites);
    CompiledDrive cd;
    cd.sites = cfg.sites;
    cd.dim = std::size_t{1} << cfg.sites;
    cd.field = cfg.field;
    cd.exchange = cfg.exchange;
    cd.omega = drive.base_frequency;
    cd.period = drive.period();
    cd.diag.resize(cd.dim);
    for (std::size_t i = 0; i < cd.dim; ++i) {
        cd.diag[i] = cfg.field * (2.0 * std::popcount(i) - cfg.sites);
    }
    cd.bonds.reserve(drive.multipliers.size());
    for (std::size_t b = 0; b < drive.multipliers.size(); ++b) {
        const int low = static_cast<int>(b);
        cd.bonds.push_back({std::uint64_t{3} << low, low, drive.multipliers[b]});
    }
    return cd;
}

// Same reduced-phase formula as bond_coefficients_at.
void drive_coeffs(const CompiledDrive& cd, double t, double* out) {
    double u = t / cd.period;
    u -= std::floor(u);
    for (std::size_t b = 0; b < cd.bonds.size(); ++b) {
        const double phase = 2.0 * std::numbers::pi * cd.bonds[b].multiplier * u;
        out[b] = cd.exchange * std::cos(phase);
    }
}

// w = diag .* v + sum_b J_b * P_b v over row-major data of row width W.
// The xor-mask permutation decomposes into contiguous runs, so every
// accumulate is a straight axpy.
void apply_drive_h(const CompiledDrive& cd, const double* coeffs, const cplx* v, cplx* w,
                   std::size_t width) {
    const auto& k = kernels::active();
    if (width == 1) {
        k.diag_mul(cd.diag.data(), v, w, cd.dim);
    } else {
        for (std::size_t r = 0; r < cd.dim; ++r) {
            k.scale_copy_real(cd.diag[r], v + r * width, w + r * width, width);
        }
    }
    for (std::size_t b = 0; b < cd.bonds.size(); ++b) {
        const double a = coeffs[b];
        const std::size_t s = std::size_t{1} << cd.bonds[b].low_bit; // rows per run
        const std::size_t seg = s * width;                           // complex per run
        const std::size_t block = 4 * seg;
        const std::size_t total = cd.dim * width;
        if (seg >= 8) {
            for (std::size_t base = 0; base < total; base += block) {
                k.axpy_real(a, v + base + 3 * seg, w + base, seg);
                k.axpy_real(a, v + base, w + base + 3 * seg, seg);
                k.axpy_real(a, v + base + 2 * seg, w + base + seg, seg);
                k.axpy_real(a, v + base + seg, w + base + 2 * seg, seg);
            }
        } else {
            const std::uint64_t mask = cd.bonds[b].mask;
            for (std::size_t r = 0; r < cd.dim; ++r) {
                const std::size_t p = r ^ mask;
                for (std::size_t c = 0; c < width; ++c) {
                    w[r * width + c] += a * v[p * width + c];
                }
            }
        }
    }
}

double series_tail_bound(double x, int order) {
    double term = 1.0;
    for (int k = 1; k <= order + 1; ++k) term *= x / k;
    return term;
}

void check_series_feasible(const CompiledDrive& cd, double dt, int order) {
    const double h_bound = cd.field * cd.sites + cd.exchange * cd.bonds.size();
    if (series_tail_bound(h_bound * dt, order) > 1e-13) {
        throw SeriesDivergence("exponential series cannot reach tolerance with ||H||*dt = " +
                               std::to_string(h_bound * dt) + "; use a smaller dt");
    }
}

// Scratch for one row-major panel of `total` complex amplitudes.
struct SeriesScratch {
    std::vector<cplx> acc, term, w;
    void resize(std::size_t total) {
        acc.resize(total);
        term.resize(total);
        w.resize(total);
    }
};

// v <- truncated series of exp(-i H dt) v with H evaluated through apply_h.
template <typename ApplyH>
void series_exp_inplace(cplx* v, std::size_t total, double dt, int order, SeriesScratch& s,
                        const ApplyH& apply_h) {
    const auto& k = kernels::active();
    std::memcpy(s.acc.data(), v, total * sizeof(cplx));
    std::memcpy(s.term.data(), v, total * sizeof(cplx));
    for (int ord = 1; ord <= order; ++ord) {
        apply_h(s.term.data(), s.w.data());
        const cplx alpha(0.0, -dt / ord);
        k.scale_copy(alpha, s.w.data(), s.term.data(), total);
        k.axpy(cplx(1.0, 0.0), s.term.data(), s.acc.data(), total);
        if (ord >= 3 && k.norm_sq(s.term.data(), total) <= 1e-32 * k.norm_sq(s.acc.data(), total))
            break;
    }
    std::memcpy(v, s.acc.data(), total * sizeof(cplx));
}

struct Rk4Scratch {
    std::vector<cplx> k1, k2, k3, k4, tmp, w;
    void resize(std::size_t total) {
        k1.resize(total);
        k2.resize(total);
        k3.resize(total);
        k4.resize(total);
        tmp.resize(total);
        w.resize(total);
    }
};

// Classic RK4 on psi' = -i H(t) psi for a single state vector.
void rk4_step_inplace(const CompiledDrive& cd, cplx* v, double t, double dt, Rk4Scratch& s,
                      std::vector<double>& coeffs) {
    const auto& k = kernels::active();
    const std::size_t n = cd.dim;
    const cplx mi(0.0, -1.0);
    const auto rhs = [&](double at, const cplx* in, cplx* out) {
        drive_coeffs(cd, at, coeffs.data());
        apply_drive_h(cd, coeffs.data(), in, s.w.data(), 1);
        k.scale_copy(mi, s.w.data(), out, n);
    };
    rhs(t, v, s.k1.data());
    std::memcpy(s.tmp.data(), v, n * sizeof(cplx));
    k.axpy(cplx(dt / 2.0, 0.0), s.k1.data(), s.tmp.data(), n);
    rhs(t + dt / 2.0, s.tmp.data(), s.k2.data());
    std::memcpy(s.tmp.data(), v, n * sizeof(cplx));
    k.axpy(cplx(dt / 2.0, 0.0), s.k2.data(), s.tmp.data(), n);
    rhs(t + dt / 2.0, s.tmp.data(), s.k3.data());
    std::memcpy(s.tmp.data(), v, n * sizeof(cplx));
    k.axpy(cplx(dt, 0.0), s.k3.data(), s.tmp.data(), n);
    rhs(t + dt, s.tmp.data(), s.k4.data());
    k.axpy(cplx(dt / 6.0, 0.0), s.k1.data(), v, n);
    k.axpy(cplx(dt / 3.0, 0.0), s.k2.data(), v, n);
    k.axpy(cplx(dt / 3.0, 0.0), s.k3.data(), v, n);
    k.axpy(cplx(dt / 6.0, 0.0), s.k4.data(), v, n);
}

struct StepPoint {
    double t;
    double dt;
};

std::vector<StepPoint> plan_steps(double t_start, double t_end, double dt) {
    std::vector<StepPoint> plan;
    if (t_end <= t_start) return plan;
    const double span = t_end - t_start;
    auto n_full = static_cast<std::size_t>(std::floor(span / dt + 1e-12));
    if (n_full > 0 && t_start + static_cast<double>(n_full) * dt > t_end) --n_full;
    plan.reserve(n_full + 1);
    for (std::size_t i = 0; i < n_full; ++i) {
        plan.push_back({t_start + static_cast<double>(i) * dt, dt});
    }
    const double t_last = t_start + static_cast<double>(n_full) * dt;
    if (t_end - t_last > 1e-12 * std::max(1.0, dt)) {
        plan.push_back({t_last, t_end - t_last});
    }
    return plan;
}

// Single-state evolution engine shared by step(), continuous_evolve() and
// the susceptibility scans.
class VectorEvolver {
  public:
    VectorEvolver(const LatticeConfig& cfg, const DriveAssignment& drive,
                  const PropagatorOptions& opts)
        : cd_(compile_drive(cfg, drive)), opts_(opts) {
        opts_.validate();
        if (opts_.method == StepMethod::MidpointExponential)
            check_series_feasible(cd_, opts_.dt, opts_.series_order);
        coeffs_.resize(cd_.bonds.size());
        if (opts_.method == StepMethod::MidpointExponential)
            series_.resize(cd_.dim);
        else
            rk4_.resize(cd_.dim);
    }

    std::size_t dim() const { return cd_.dim; }

    void advance(StateVector& state, double t_start, double t_end) {
        if (state.dim() != cd_.dim)
            throw DimensionMismatch("state dim does not match the drive Hamiltonian");
        double norm_prev = opts_.check_norm ? state.norm() : 0.0;
        for (const StepPoint& sp : plan_steps(t_start, t_end, opts_.dt)) {
            advance_one(state.data(), sp.t, sp.dt);
            if (opts_.check_norm) {
                const double norm_now = state.norm();
                if (std::abs(norm_now - norm_prev) > kStepNormDriftTol) {
                    throw NumericalIntegrity("per-step norm drift " +
                                             std::to_string(std::abs(norm_now - norm_prev)) +
                                             " exceeds tolerance; use a smaller dt");
                }
                norm_prev = norm_now;
            }
        }
    }

  private:
    void advance_one(cplx* v, double t, double dt) {
        if (opts_.method == StepMethod::MidpointExponential) {
            drive_coeffs(cd_, t + dt / 2.0, coeffs_.data());
            series_exp_inplace(v, cd_.dim, dt, opts_.series_order, series_,
                               [&](const cplx* in, cplx* out) {
                                   apply_drive_h(cd_, coeffs_.data(), in, out, 1);
                               });
        } else {
            rk4_step_inplace(cd_, v, t, dt, rk4_, coeffs_);
        }
    }

    CompiledDrive cd_;
    PropagatorOptions opts_;
    std::vector<double> coeffs_;
    SeriesScratch series_;
    Rk4Scratch rk4_;
};

} // namespace

StateVector step(const StateVector& state, double t, double dt, const LatticeConfig& cfg,
                 const DriveAssignment& drive, const PropagatorOptions& opts) {
    PropagatorOptions local = opts;
    local.dt = dt;
    VectorEvolver evolver(cfg, drive, local);
    StateVector out = state;
    evolver.advance(out, t, t + dt);
    return out;
}

struct TrajectoryEvolver::Impl {
    VectorEvolver evolver;
    Impl(const LatticeConfig& cfg, const DriveAssignment& drive, const PropagatorOptions& opts)
        : evolver(cfg, drive, opts) {}
};

TrajectoryEvolver::TrajectoryEvolver(const LatticeConfig& cfg, const DriveAssignment& drive,
                                     const PropagatorOptions& opts)
    : impl_(std::make_unique<Impl>(cfg, drive, opts)) {}
TrajectoryEvolver::TrajectoryEvolver(TrajectoryEvolver&&) noexcept = default;
TrajectoryEvolver& TrajectoryEvolver::operator=(TrajectoryEvolver&&) noexcept = default;
TrajectoryEvolver::~TrajectoryEvolver() = default;

void TrajectoryEvolver::advance(StateVector& state, double t_from, double t_to) {
    impl_->evolver.advance(state, t_from, t_to);
}

void evolve_with_samples(StateVector& state, double t_start, double t_end, double sample_every,
                         const LatticeConfig& cfg, const DriveAssignment& drive,
                         const PropagatorOptions& opts,
                         const std::function<void(double, const StateVector&)>& on_sample) {
    if (t_end < t_start) throw ConfigError("evolution end time precedes start time");
    VectorEvolver evolver(cfg, drive, opts);
    on_sample(t_start, state);
    if (t_end == t_start) return;
    double t = t_start;
    if (sample_every > 0.0) {
        for (std::size_t j = 1;; ++j) {
            const double t_next = t_start + static_cast<double>(j) * sample_every;
            if (t_next >= t_end - 1e-12 * std::max(1.0, sample_every)) break;
            evolver.advance(state, t, t_next);
            on_sample(t_next, state);
            t = t_next;
        }
    }
    evolver.advance(state, t, t_end);
    on_sample(t_end, state);
}

std::vector<TimedSample> continuous_evolve(const StateVector& state0, double t_end,
                                           const LatticeConfig& cfg, const DriveAssignment& drive,
                                           const PropagatorOptions& opts, double sample_every) {
    std::vector<TimedSample> out;
    StateVector state = state0;
    evolve_with_samples(state, 0.0, t_end, sample_every, cfg, drive, opts,
                        [&](double t, const StateVector& s) { out.push_back({t, s}); });
    return out;
}

UnitaryMatrix::UnitaryMatrix(std::size_t dim, std::string label)
    : dim_(dim), label_(std::move(label)), data_(dim * dim, cplx(0.0, 0.0)) {}

StateVector UnitaryMatrix::apply(const StateVector& x) const {
    if (x.dim() != dim_) throw DimensionMismatch("matrix dim vs state dim");
    const auto& k = kernels::active();
    std::vector<cplx> y(dim_, cplx(0.0, 0.0));
    for (std::size_t c = 0; c < dim_; ++c) {
        const cplx xc = x[c];
        if (xc == cplx(0.0, 0.0)) continue;
        k.axpy(xc, column(c), y.data(), dim_);
    }
    return StateVector::raw(std::move(y));
}

double UnitaryMatrix::unitarity_defect(std::size_t threads) const {
    const auto& k = kernels::active();
    if (threads == 0) threads = default_thread_count();
    std::vector<double> worst(dim_, 0.0);
    parallel_for(dim_, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t a = begin; a < end; ++a) {
            double w = 0.0;
            for (std::size_t b = a; b < dim_; ++b) {
                cplx d = k.dot_conj(column(a), column(b), dim_);
                if (a == b) d -= 1.0;
                w = std::max(w, std::abs(d));
            }
            worst[a] = w;
        }
    });
    double defect = 0.0;
    for (double w : worst) defect = std::max(defect, w);
    return defect;
}

double UnitaryMatrix::max_abs_diff(const UnitaryMatrix& a, const UnitaryMatrix& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("matrix dims differ");
    double m = 0.0;
    for (std::size_t i = 0; i < a.data_.size(); ++i) {
        m = std::max(m, std::abs(a.data_[i] - b.data_[i]));
    }
    return m;
}

UnitaryMatrix one_period_operator(const LatticeConfig& cfg, const DriveAssignment& drive,
                                  const PropagatorOptions& opts) {
    opts.validate();
    const CompiledDrive cd = compile_drive(cfg, drive);
    if (opts.method == StepMethod::MidpointExponential)
        check_series_feasible(cd, opts.dt, opts.series_order);

    const std::size_t dim = cd.dim;
    const std::size_t width = std::min<std::size_t>(dim, 16);
    const std::size_t n_tiles = dim / width;
    const std::size_t threads = opts.threads ? opts.threads : default_thread_count();

    // One shared step plan with midpoint drive coefficients.
    const std::vector<StepPoint> plan = plan_steps(0.0, cd.period, opts.dt);
    const std::size_t nb = cd.bonds.size();
    std::vector<double> mid_coeffs(plan.size() * nb);
    for (std::size_t sidx = 0; sidx < plan.size(); ++sidx) {
        drive_coeffs(cd, plan[sidx].t + plan[sidx].dt / 2.0, mid_coeffs.data() + sidx * nb);
    }

    UnitaryMatrix u(dim, "U(T)");
    cplx* udata = u.data().data();

    parallel_for(n_tiles, threads, [&](std::size_t tile_begin, std::size_t tile_end) {
        const std::size_t total = dim * width;
        std::vector<cplx> v(total);
        SeriesScratch series;
        Rk4Scratch rk4;
        std::vector<double> rk4_coeffs;
        if (opts.method == StepMethod::MidpointExponential) {
            series.resize(total);
        } else {
            rk4.resize(total);
            rk4_coeffs.resize(nb);
        }
        for (std::size_t tile = tile_begin; tile < tile_end; ++tile) {
            const std::size_t col0 = tile * width;
            std::fill(v.begin(), v.end(), cplx(0.0, 0.0));
            for (std::size_t c = 0; c < width; ++c) v[(col0 + c) * width + c] = cplx(1.0, 0.0);

            if (opts.method == StepMethod::MidpointExponential) {
                for (std::size_t sidx = 0; sidx < plan.size(); ++sidx) {
                    const double* coeffs = mid_coeffs.data() + sidx * nb;
                    series_exp_inplace(v.data(), total, plan[sidx].dt, opts.series_order, series,
                                       [&](const cplx* in, cplx* out) {
                                           apply_drive_h(cd, coeffs, in, out, width);
                                       });
                }
            } else {
                // rk4 runs column-by-column inside the tile
                std::vector<cplx> col(dim);
                for (std::size_t c = 0; c < width; ++c) {
                    for (std::size_t r = 0; r < dim; ++r) col[r] = v[r * width + c];
                    for (const StepPoint& sp : plan) {
                        rk4_step_inplace(cd, col.data(), sp.t, sp.dt, rk4, rk4_coeffs);
                    }
                    for (std::size_t r = 0; r < dim; ++r) v[r * width + c] = col[r];
                }
            }

            for (std::size_t c = 0; c < width; ++c) {
                cplx* dst = udata + (col0 + c) * dim;
                for (std::size_t r = 0; r < dim; ++r) dst[r] = v[r * width + c];
            }
        }
    });

    const double defect = u.unitarity_defect(threads);
    if (defect > 1e-8) {
        throw NumericalIntegrity("one-period operator unitarity defect " + std::to_string(defect) +
                                 " exceeds 1e-8");
    }
    return u;
}

std::vector<StateVector> stroboscopic_evolve(const StateVector& state0, const UnitaryMatrix& u,
                                             int n_periods) {
    if (n_periods < 0) throw ConfigError("period count must be non-negative");
    if (state0.dim() != u.dim()) throw DimensionMismatch("state dim vs operator dim");
    std::vector<StateVector> out;
    out.reserve(static_cast<std::size_t>(n_periods) + 1);
    out.push_back(state0);
    for (int n = 1; n <= n_periods; ++n) {
        out.push_back(u.apply(out.back()));
    }
    const double drift = std::abs(out.back().norm() - state0.norm());
    if (drift > 1e-8)
        throw NumericalIntegrity("stroboscopic norm drift " + std::to_string(drift) +
                                 " exceeds 1e-8");
    return out;
}

UnitaryMatrix exp_of_operator(const SparsePauliOperator& op, double duration,
                              const PropagatorOptions& opts) {
    opts.validate();
    const std::size_t dim = op.dim();
    double h_bound = 0.0;
    for (const auto& term : op.terms()) h_bound += std::abs(term.coefficient);
    std::size_t n_sub = 1;
    if (h_bound * std::abs(duration) > 0.25)
        n_sub = static_cast<std::size_t>(std::ceil(h_bound * std::abs(duration) / 0.25));
    const double sub = duration / static_cast<double>(n_sub);

    UnitaryMatrix u(dim, "exp(-i H t)");
    SeriesScratch scratch;
    scratch.resize(dim);
    std::vector<cplx> col(dim);
    for (std::size_t c = 0; c < dim; ++c) {
        std::fill(col.begin(), col.end(), cplx(0.0, 0.0));
        col[c] = cplx(1.0, 0.0);
        for (std::size_t s = 0; s < n_sub; ++s) {
            series_exp_inplace(col.data(), dim, sub, opts.series_order, scratch,
                               [&](const cplx* in, cplx* out) {
                                   std::fill_n(out, dim, cplx(0.0, 0.0));
                                   accumulate_operator(op, in, out);
                               });
        }
        std::memcpy(u.column(c), col.data(), dim * sizeof(cplx));
    }
    return u;
}

std::vector<cplx> free_phase_diag(const LatticeConfig& cfg, double duration) {
    cfg.validate();
    const std::size_t dim = std::size_t{1} << cfg.sites;
    std::vector<cplx> phases(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const double mz = 2.0 * std::popcount(i) - cfg.sites;
        phases[i] = std::polar(1.0, -cfg.field * mz * duration);
    }
    return phases;
}

double magnus_residual(const UnitaryMatrix& u, const EffectiveHamiltonian& eff,
                       const LatticeConfig& cfg, const DriveAssignment& drive,
                       const PropagatorOptions& opts) {
    const double period = drive.period();
    const UnitaryMatrix e = exp_of_operator(eff.to_operator(), period, opts);
    if (e.dim() != u.dim()) throw DimensionMismatch("effective operator dim vs U dim");
    const std::vector<cplx> phi = free_phase_diag(cfg, period);
    double worst = 0.0;
    for (std::size_t c = 0; c < u.dim(); ++c) {
        const cplx* ucol = u.column(c);
        const cplx* ecol = e.column(c);
        for (std::size_t r = 0; r < u.dim(); ++r) {
            worst = std::max(worst, std::abs(std::conj(phi[r]) * ucol[r] - ecol[r]));
        }
    }
    return worst;
}

} // namespace floq
