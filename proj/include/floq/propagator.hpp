#pragma once

#include "floq/drive.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace floq {

enum class StepMethod { MidpointExponential, Rk4 };

std::optional<StepMethod> parse_method(const std::string& name);
std::string method_name(StepMethod method);

struct PropagatorOptions {
    double dt = 0.001;      // units of 1/g
    int series_order = 12;  // truncation of the per-step exponential series
    StepMethod method = StepMethod::MidpointExponential;
    bool check_norm = true; // per-step norm drift assertion on vector paths
    std::size_t threads = 0; // 0: default_thread_count()

    void validate() const;
};

/// Dense one-period (or general fixed-duration) evolution operator,
/// column-major: column c is the propagated basis state c.
class UnitaryMatrix {
  public:
    UnitaryMatrix(std::size_t dim, std::string label);

    std::size_t dim() const { return dim_; }
    const std::string& label() const { return label_; }
    void set_label(std::string label) { label_ = std::move(label); }

    const cplx* column(std::size_t c) const { return data_.data() + c * dim_; }
    cplx* column(std::size_t c) { return data_.data() + c * dim_; }
    cplx at(std::size_t row, std::size_t col) const { return data_[col * dim_ + row]; }

    const std::vector<cplx>& data() const { return data_; }
    std::vector<cplx>& data() { return data_; }

    /// U |x>
    StateVector apply(const StateVector& x) const;

    /// max_{a,b} |(U^dag U - I)_{ab}|
    double unitarity_defect(std::size_t threads = 0) const;

    static double max_abs_diff(const UnitaryMatrix& a, const UnitaryMatrix& b);

  private:
    std::size_t dim_;
    std::string label_;
    std::vector<cplx> data_;
};

/// One integration step of |psi(t)> -> |psi(t+dt)| under H(t) of the given
/// drive. Midpoint-exponential applies the truncated series of
/// exp(-i H(t+dt/2) dt); rk4 is the classic Runge-Kutta step.
StateVector step(const StateVector& state, double t, double dt, const LatticeConfig& cfg,
                 const DriveAssignment& drive, const PropagatorOptions& opts);

/// Reusable single-trajectory stepper (compiled drive plus scratch buffers);
/// advance() integrates the state from t_from to t_to in dt-sized steps.
class TrajectoryEvolver {
  public:
    TrajectoryEvolver(const LatticeConfig& cfg, const DriveAssignment& drive,
                      const PropagatorOptions& opts);
    TrajectoryEvolver(TrajectoryEvolver&&) noexcept;
    TrajectoryEvolver& operator=(TrajectoryEvolver&&) noexcept;
    ~TrajectoryEvolver();

    void advance(StateVector& state, double t_from, double t_to);

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Full-period propagation of every basis state, evolved from t = 0 to
/// T = 2 pi / Omega. Throws NumericalIntegrity if the result is not
/// unitary within 1e-8.
UnitaryMatrix one_period_operator(const LatticeConfig& cfg, const DriveAssignment& drive,
                                  const PropagatorOptions& opts);

/// States at t = 0, T, ..., n T by repeated application of U.
std::vector<StateVector> stroboscopic_evolve(const StateVector& state0, const UnitaryMatrix& u,
                                             int n_periods);

struct TimedSample {
    double t;
    StateVector state;
};

/// Continuous evolution with samples every `sample_every` (and at t_end).
/// sample_every <= 0 records only the endpoints.
std::vector<TimedSample> continuous_evolve(const StateVector& state0, double t_end,
                                           const LatticeConfig& cfg, const DriveAssignment& drive,
                                           const PropagatorOptions& opts, double sample_every);

/// Streaming form: the callback sees (t, state) at t=0, each sample time,
/// and t_end.
void evolve_with_samples(StateVector& state, double t_start, double t_end, double sample_every,
                         const LatticeConfig& cfg, const DriveAssignment& drive,
                         const PropagatorOptions& opts,
                         const std::function<void(double, const StateVector&)>& on_sample);

/// exp(-i op duration) for a time-independent operator, built column by
/// column from the same truncated-series stepper.
UnitaryMatrix exp_of_operator(const SparsePauliOperator& op, double duration,
                              const PropagatorOptions& opts);

/// Diagonal of exp(-i g sum_j sigma^z_j duration) in the computational basis.
std::vector<cplx> free_phase_diag(const LatticeConfig& cfg, double duration);

/// max-norm distance between U and the drive's averaged effective evolution,
/// compared in the rotating frame: || Phi^dag U - exp(-i H_eff T) ||_max with
/// Phi the exact free-field factor over one period.
double magnus_residual(const UnitaryMatrix& u, const EffectiveHamiltonian& eff,
                       const LatticeConfig& cfg, const DriveAssignment& drive,
                       const PropagatorOptions& opts);

} // namespace floq
