#include "floquet/propagator.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include "floquet/error.hpp"

namespace floquet {

using namespace std::complex_literals;

SimParams::SimParams(double eps, double mu, PotentialSpec potential, Grid grid,
                     int n_basis, int steps_per_period, double t0)
    : eps_(eps),
      mu_(mu),
      potential_(std::move(potential)),
      grid_(std::move(grid)),
      n_basis_(n_basis),
      steps_per_period_(steps_per_period),
      t0_(t0) {
  if (!std::isfinite(eps) || eps < 0.0) {
    throw PreconditionError("eps must be finite and non-negative");
  }
  if (!std::isfinite(mu)) throw PreconditionError("mu must be finite");
  if (!std::isfinite(t0)) throw PreconditionError("t0 must be finite");
  if (!potential_.eval || !potential_.grad_x1 || !potential_.hess_x1) {
    throw PreconditionError("potential is missing value or derivatives");
  }
  if (n_basis < 1) throw PreconditionError("n_basis must be positive");
  if (steps_per_period < 3) {
    throw PreconditionError("need at least 3 steps per period");
  }
  threshold_ = eps > 0.0 ? check_threshold(eps, mu, potential_)
                         : ThresholdCheck{false, -std::abs(mu) *
                                                     potential_.sup_grad_x1};
}

StepPlan plan_steps(double span, double nominal_dt) {
  if (span == 0.0) return {};
  if (!(nominal_dt > 0.0)) throw PreconditionError("nominal step must be positive");
  const double length = std::abs(span);
  long n = std::lround(length / nominal_dt);
  if (n >= 1 && std::abs(n * nominal_dt - length) <= 1e-9 * length) {
    // Exact ±dt keeps cached kinetic factors usable.
    return {n, std::copysign(nominal_dt, span)};
  }
  n = static_cast<long>(std::ceil(length / nominal_dt));
  return {n, span / static_cast<double>(n)};
}

namespace {

Eigen::VectorXcd kinetic_multiplier(const Eigen::VectorXd& k, double dt) {
  const double s = std::sin(dt);
  Eigen::VectorXcd out(k.size());
  for (Eigen::Index j = 0; j < k.size(); ++j) {
    out[j] = std::polar(1.0, -0.5 * s * k[j] * k[j]);
  }
  return out;
}

void require_grid_state(const WaveFunction& state, const Grid& grid) {
  if (state.representation() != Representation::kGrid) {
    throw PreconditionError("propagation needs a GridRep state");
  }
  if (state.coefficients().size() != grid.n_points()) {
    throw PreconditionError("state size does not match the grid");
  }
}

void require_normalized(const WaveFunction& state, const Tolerances& tol) {
  if (std::abs(state.norm() - 1.0) > tol.normalization) {
    std::ostringstream msg;
    msg << "state norm " << state.norm() << " is not 1 within "
        << tol.normalization;
    throw PreconditionError(msg.str());
  }
}

}  // namespace

SplitStepPropagator::SplitStepPropagator(const SimParams& params)
    : params_(params),
      fft_(params.grid().n_points()),
      half_x_squared_(0.5 * params.grid().nodes().array().square().matrix()),
      wavenumbers_(params.grid().wavenumbers()),
      cached_dt_(params.dt()) {
  forward_kinetic_ = kinetic_multiplier(wavenumbers_, cached_dt_);
  backward_kinetic_ = forward_kinetic_.conjugate();
}

void SplitStepPropagator::step_in_place(Eigen::VectorXcd& samples, double t,
                                        double dt) const {
  if (!(std::abs(dt) < std::numbers::pi)) {
    throw PreconditionError("time step must satisfy |dt| < π");
  }
  const auto& x = params_.grid().nodes();
  const double mid = t + 0.5 * dt;
  const double chirp = std::tan(0.5 * dt);
  const double half = 0.5 * dt;
  const double forcing = 2.0 * params_.eps() * std::sin(mid);
  const double mu = params_.mu();
  const auto& v = params_.potential().eval;

  Eigen::VectorXcd factor(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    double phase = chirp * half_x_squared_[j] + half * forcing * x[j];
    if (mu != 0.0) phase += half * mu * v(mid, x[j]);
    factor[j] = std::polar(1.0, -phase);
  }

  samples.array() *= factor.array();
  if (dt == cached_dt_) {
    apply_fourier_multiplier(fft_, forward_kinetic_, samples);
  } else if (dt == -cached_dt_) {
    apply_fourier_multiplier(fft_, backward_kinetic_, samples);
  } else {
    apply_fourier_multiplier(fft_, kinetic_multiplier(wavenumbers_, dt),
                             samples);
  }
  samples.array() *= factor.array();
}

void SplitStepPropagator::evolve_in_place(Eigen::VectorXcd& samples, double t0,
                                          double t1) const {
  const StepPlan plan = plan_steps(t1 - t0, params_.dt());
  for (long i = 0; i < plan.count; ++i) {
    step_in_place(samples, t0 + static_cast<double>(i) * plan.size, plan.size);
  }
}

WaveFunction SplitStepPropagator::step(const WaveFunction& state, double t,
                                       double dt) const {
  require_grid_state(state, params_.grid());
  Eigen::VectorXcd samples = state.coefficients();
  step_in_place(samples, t, dt);
  return state.with_coefficients(std::move(samples));
}

WaveFunction SplitStepPropagator::evolve(const WaveFunction& state, double t0,
                                         double t1) const {
  require_grid_state(state, params_.grid());
  Eigen::VectorXcd samples = state.coefficients();
  evolve_in_place(samples, t0, t1);
  return state.with_coefficients(std::move(samples));
}

WaveFunction step(const WaveFunction& state, double t, double dt,
                  const SimParams& params, const Tolerances& tol) {
  require_grid_state(state, params.grid());
  require_normalized(state, tol);
  return SplitStepPropagator(params).step(state, t, dt);
}

WaveFunction evolve(const WaveFunction& state, double t0, double t1,
                    const SimParams& params, const Tolerances& tol) {
  require_grid_state(state, params.grid());
  require_normalized(state, tol);
  return SplitStepPropagator(params).evolve(state, t0, t1);
}

PhasePoint forced_classical_solution(double t, double eps) {
  return {eps * (t * std::cos(t) - std::sin(t)), -eps * t * std::sin(t)};
}

double forced_action_phase(double t, double eps) {
  return 0.5 * eps * eps *
         (t + 0.5 * t * std::cos(2.0 * t) - 0.75 * std::sin(2.0 * t));
}

WaveFunction exact_mu0_propagate(const WaveFunction& state, double t,
                                 double eps, const HermiteBasis& basis) {
  if (state.representation() != Representation::kHermite ||
      state.coefficients().size() != basis.n_basis()) {
    throw PreconditionError(
        "closed-form propagation needs a HermiteRep state matching the basis");
  }
  const int n = basis.n_basis();
  Eigen::VectorXcd rotated(n);
  for (int k = 0; k < n; ++k) {
    const double angle =
        std::remainder(-t * (k + 0.5), 2.0 * std::numbers::pi);
    rotated[k] = state.coefficients()[k] * std::polar(1.0, angle);
  }

  const PhasePoint c = forced_classical_solution(t, eps);
  const double phi = forced_action_phase(t, eps);
  const Eigen::VectorXd& x = basis.grid().nodes();
  const Eigen::VectorXd shifted = x.array() - c.x;
  const Eigen::VectorXcd profile =
      hermite_matrix(shifted, n).cast<std::complex<double>>() * rotated;

  Eigen::VectorXcd out(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    out[j] = std::polar(1.0, phi + c.p * x[j] - 0.5 * c.p * c.x) * profile[j];
  }
  return WaveFunction::on_grid(basis.grid(), std::move(out));
}

double harmonic_energy(const WaveFunction& state, const Grid& grid) {
  require_grid_state(state, grid);
  const Eigen::VectorXcd& psi = state.coefficients();
  const double norm_sq = psi.squaredNorm();
  if (norm_sq == 0.0) throw PreconditionError("energy of the zero state");

  const auto& x = grid.nodes();
  const double potential =
      (psi.array().abs2() * x.array().square()).sum() * 0.5;

  FourierTransform fft(grid.n_points());
  Eigen::VectorXcd spectrum = psi;
  fft.forward(spectrum);
  const Eigen::VectorXd k = grid.wavenumbers();
  const double kinetic = 0.5 * (spectrum.array().abs2() * k.array().square()).sum() /
                         grid.n_points();
  return (potential + kinetic) / norm_sq - 0.5;
}

double boundary_mass(const Eigen::VectorXcd& samples, const Grid& grid,
                     double fraction) {
  const double total = samples.squaredNorm();
  if (total == 0.0) return 0.0;
  const double x_edge = (1.0 - fraction) * grid.x_max();
  const double k_edge = (1.0 - fraction) * grid.k_max();

  double outer_x = 0.0;
  const auto& x = grid.nodes();
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (std::abs(x[j]) > x_edge) outer_x += std::norm(samples[j]);
  }

  FourierTransform fft(grid.n_points());
  Eigen::VectorXcd spectrum = samples;
  fft.forward(spectrum);
  const Eigen::VectorXd k = grid.wavenumbers();
  double outer_k = 0.0;
  for (Eigen::Index j = 0; j < k.size(); ++j) {
    if (std::abs(k[j]) > k_edge) outer_k += std::norm(spectrum[j]);
  }
  outer_k /= grid.n_points();
  return (outer_x + outer_k) / total;
}

}  // namespace floquet
