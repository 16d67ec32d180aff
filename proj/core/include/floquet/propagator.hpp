#pragma once

#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "floquet/fourier.hpp"
#include "floquet/grid.hpp"
#include "floquet/hermite.hpp"
#include "floquet/potentials.hpp"
#include "floquet/tolerances.hpp"
#include "floquet/wavefunction.hpp"

namespace floquet {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Uniform subdivision of [t0, t0 + span]: the nominal step when it divides
/// the span (to 1e-9 relative), otherwise the smallest count of equal steps
/// not exceeding it. Negative spans give negative step sizes.
struct StepPlan {
  long count = 0;
  double size = 0.0;
};
StepPlan plan_steps(double span, double nominal_dt);

/// Physical and numerical parameters of
///   i ∂u/∂t = −½u'' + ½x²u + 2ε sin(t) x u + μ V(t, x) u.
class SimParams {
 public:
  SimParams(double eps, double mu, PotentialSpec potential, Grid grid,
            int n_basis, int steps_per_period, double t0 = 0.0);

  double eps() const { return eps_; }
  double mu() const { return mu_; }
  const PotentialSpec& potential() const { return potential_; }
  const Grid& grid() const { return grid_; }
  int n_basis() const { return n_basis_; }
  int steps_per_period() const { return steps_per_period_; }
  /// 2π / steps_per_period.
  double dt() const { return kTwoPi / steps_per_period_; }
  double t0() const { return t0_; }
  /// Threshold margin ε − |μ|·sup|∂₁V|, recorded at construction.
  const ThresholdCheck& threshold() const { return threshold_; }

 private:
  double eps_;
  double mu_;
  PotentialSpec potential_;
  Grid grid_;
  int n_basis_;
  int steps_per_period_;
  double t0_;
  ThresholdCheck threshold_;
};

/// Second-order potential–kinetic–potential splitting on the periodic grid.
///
/// The harmonic part −½Δ + ½x² is integrated exactly through its shear
/// factorization exp(−i tan(τ/2) x²/2) · exp(−i sin(τ) k²/2) · exp(−i tan(τ/2) x²/2);
/// the forcing 2ε sin(t)x and μV(t,x) ride on the two outer half-steps at
/// the midpoint time. A step with −dt from t+dt is the exact inverse of the
/// step with dt from t.
class SplitStepPropagator {
 public:
  explicit SplitStepPropagator(const SimParams& params);

  const SimParams& params() const { return params_; }

  void step_in_place(Eigen::VectorXcd& samples, double t, double dt) const;
  /// Uniform steps of size close to params().dt() covering [t0, t1]; t1 < t0
  /// runs the inverse steps.
  void evolve_in_place(Eigen::VectorXcd& samples, double t0, double t1) const;

  WaveFunction step(const WaveFunction& state, double t, double dt) const;
  WaveFunction evolve(const WaveFunction& state, double t0, double t1) const;

 private:
  const Eigen::VectorXcd& kinetic_factor(double dt) const;

  SimParams params_;
  FourierTransform fft_;
  Eigen::VectorXd half_x_squared_;
  Eigen::VectorXd wavenumbers_;
  Eigen::VectorXcd forward_kinetic_;
  Eigen::VectorXcd backward_kinetic_;
  double cached_dt_;
  mutable Eigen::VectorXcd scratch_kinetic_;
};

WaveFunction step(const WaveFunction& state, double t, double dt,
                  const SimParams& params, const Tolerances& tol = {});
WaveFunction evolve(const WaveFunction& state, double t0, double t1,
                    const SimParams& params, const Tolerances& tol = {});

/// Phase-space point of the classical forced oscillator ẍ + x = −2ε sin t
/// started at rest at the origin: x = ε(t cos t − sin t), p = −ε t sin t.
struct PhasePoint {
  double x = 0.0;
  double p = 0.0;
};
PhasePoint forced_classical_solution(double t, double eps);

/// Scalar phase accumulated by the displacement part of the μ = 0 propagator.
double forced_action_phase(double t, double eps);

/// Closed-form μ = 0 propagator applied to a HermiteRep state:
/// U(t,0) = e^{iφ(t)} D(γ(t)) e^{−it(H₀+½)}, with γ = (x_c + i p_c)/√2.
/// The result is returned in GridRep on the basis grid. The displaced
/// Hermite functions are evaluated directly at x − x_c, no FFT involved.
WaveFunction exact_mu0_propagate(const WaveFunction& state, double t,
                                 double eps, const HermiteBasis& basis);

/// ⟨ψ, H₀ψ⟩ for a GridRep state, kinetic part evaluated spectrally.
double harmonic_energy(const WaveFunction& state, const Grid& grid);

/// Fraction of ‖ψ‖² sitting in the outer `fraction` of the position window
/// or of the wavenumber band; large values mean wrap-around or aliasing.
double boundary_mass(const Eigen::VectorXcd& samples, const Grid& grid,
                     double fraction);

}  // namespace floquet
