#pragma once

#include <complex>
#include <functional>

#include "floquet/hermite.hpp"
#include "floquet/operator_matrix.hpp"
#include "floquet/propagator.hpp"
#include "floquet/wavefunction.hpp"

namespace floquet {

enum class GaugeStage { kU0, kU1, kU2, kU3 };
enum class GaugeDirection { kForward, kAdjoint };

/// The four time-dependent unitaries that carry the lab-frame generator to
///   H_L(t) = εD + (2 − ε²)/4 + μ V(t, X cos t + D sin t − (ε sin t / 2)).
///
///   U0(t) = exp(−itH₀)
///   U1(t) = multiplication by exp(iε cos(2t) x / 2)
///   U2(t) : f(x) ↦ f(x + ε sin(2t) / 2)
///   U3(t) = exp(−iε² sin(2t)/4 + iε² sin(4t)/16)
///
/// A lab solution u maps to a reduced-frame solution v = U3†U2†U1†U0† u.
struct GaugeChain {
  double eps = 0.0;

  std::complex<double> u1_phase(double t, double x) const;
  double u2_shift(double t) const;
  std::complex<double> u3_phase(double t) const;
};

/// X cos t + D sin t = e^{itH₀} X e^{−itH₀}.
OperatorMatrix heisenberg_X(double t, const HermiteBasis& basis);
/// −X sin t + D cos t = e^{itH₀} D e^{−itH₀}.
OperatorMatrix heisenberg_D(double t, const HermiteBasis& basis);

/// U0 needs HermiteRep, U1 and U2 need GridRep, U3 accepts either.
/// Throws PreconditionError on a representation mismatch.
WaveFunction apply_gauge(GaugeStage stage, GaugeDirection direction,
                         const WaveFunction& state, double t, double eps,
                         const HermiteBasis& basis);

/// GridRep lab state → GridRep reduced-frame state at time t.
WaveFunction to_reduced_frame(const WaveFunction& lab, double t, double eps,
                              const HermiteBasis& basis);
/// Inverse of to_reduced_frame.
WaveFunction from_reduced_frame(const WaveFunction& reduced, double t,
                                double eps, const HermiteBasis& basis);

using ScalarFunction = std::function<double(double)>;

/// W(aX + bD + c) in HermiteRep for a linear symbol.
///
/// With (a, b) = r(cos θ, sin θ) this is e^{iθH₀} W(rX + c) e^{−iθH₀}, where
/// W(rX + c) is the quadrature Galerkin matrix of a multiplication operator.
/// Throws PreconditionError when (a, b) = (0, 0).
OperatorMatrix weyl_linear(const ScalarFunction& symbol, double a, double b,
                           double c, const HermiteBasis& basis);
/// Same operator from an explicit polar pair; r may be negative.
OperatorMatrix weyl_rotated(const ScalarFunction& symbol, double r,
                            double theta, double c, const HermiteBasis& basis);

/// Fiber Hamiltonian H_L(t) (the −i∂_t part is carried by time ordering).
OperatorMatrix transformed_hamiltonian_L(double t, const SimParams& params,
                                         const HermiteBasis& basis);

/// Time-ordered propagation of i ∂v/∂t = H_L(t) v on the grid.
///
/// εD + (2 − ε²)/4 is applied exactly as a Fourier multiplier; the μ term is
/// a multiplication in the frame rotated by e^{−itH₀}, reached through the
/// Hermite basis. Strang splitting with midpoint time.
class ReducedFramePropagator {
 public:
  ReducedFramePropagator(const SimParams& params, const HermiteBasis& basis);

  void step_in_place(Eigen::VectorXcd& samples, double t, double dt) const;
  void evolve_in_place(Eigen::VectorXcd& samples, double t0, double t1) const;

 private:
  void apply_perturbation(Eigen::VectorXcd& samples, double t,
                          double tau) const;

  SimParams params_;
  HermiteBasis basis_;
  FourierTransform fft_;
  Eigen::VectorXd wavenumbers_;
};

struct FrameEquivalence {
  double discrepancy = 0.0;
  double lab_norm = 0.0;
  double reduced_norm = 0.0;
};

/// Propagates `initial` (GridRep) from t0 to t0 + t1 in the lab frame and,
/// independently, in the reduced frame; maps the latter back through the
/// gauge chain and returns the L² distance.
FrameEquivalence compare_frames(const SimParams& params,
                                const HermiteBasis& basis,
                                const WaveFunction& initial, double t1);

/// compare_frames on the ground state of H₀; returns the discrepancy.
/// Throws PreconditionError unless t1 ∈ (0, 2π].
double verify_frame_equivalence(const SimParams& params, double t1);

}  // namespace floquet
