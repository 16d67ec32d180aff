#include "floquet/transforms.hpp"

#include <cmath>
#include <string>

#include "floquet/error.hpp"

namespace floquet {

using namespace std::complex_literals;

std::complex<double> GaugeChain::u1_phase(double t, double x) const {
  return std::polar(1.0, 0.5 * eps * std::cos(2.0 * t) * x);
}

double GaugeChain::u2_shift(double t) const {
  return 0.5 * eps * std::sin(2.0 * t);
}

std::complex<double> GaugeChain::u3_phase(double t) const {
  const double e2 = eps * eps;
  return std::polar(1.0, -e2 * std::sin(2.0 * t) / 4.0 +
                             e2 * std::sin(4.0 * t) / 16.0);
}

OperatorMatrix heisenberg_X(double t, const HermiteBasis& basis) {
  return OperatorMatrix(op_X(basis).entries() * std::cos(t) +
                            op_D(basis).entries() * std::sin(t),
                        Representation::kHermite, {.hermitian = true});
}

OperatorMatrix heisenberg_D(double t, const HermiteBasis& basis) {
  return OperatorMatrix(-op_X(basis).entries() * std::sin(t) +
                            op_D(basis).entries() * std::cos(t),
                        Representation::kHermite, {.hermitian = true});
}

namespace {

void require_rep(const WaveFunction& state, Representation rep,
                 const char* stage) {
  if (state.representation() != rep) {
    throw PreconditionError(std::string("gauge stage ") + stage + " needs " +
                            to_string(rep) + " representation, got " +
                            to_string(state.representation()));
  }
}

double sign_of(GaugeDirection direction) {
  return direction == GaugeDirection::kForward ? 1.0 : -1.0;
}

}  // namespace

WaveFunction apply_gauge(GaugeStage stage, GaugeDirection direction,
                         const WaveFunction& state, double t, double eps,
                         const HermiteBasis& basis) {
  const GaugeChain chain{eps};
  const double s = sign_of(direction);
  switch (stage) {
    case GaugeStage::kU0: {
      require_rep(state, Representation::kHermite, "U0");
      if (state.coefficients().size() != basis.n_basis()) {
        throw PreconditionError("U0: state size does not match the basis");
      }
      return state.with_coefficients(
          exp_H0_phases(s * t, basis.n_basis()).cwiseProduct(state.coefficients()));
    }
    case GaugeStage::kU1: {
      require_rep(state, Representation::kGrid, "U1");
      const auto& x = basis.grid().nodes();
      if (state.coefficients().size() != x.size()) {
        throw PreconditionError("U1: state size does not match the grid");
      }
      Eigen::VectorXcd out = state.coefficients();
      for (Eigen::Index j = 0; j < x.size(); ++j) {
        const std::complex<double> phase = chain.u1_phase(t, x[j]);
        out[j] *= s > 0 ? phase : std::conj(phase);
      }
      return state.with_coefficients(std::move(out));
    }
    case GaugeStage::kU2: {
      require_rep(state, Representation::kGrid, "U2");
      const Grid& grid = basis.grid();
      if (state.coefficients().size() != grid.n_points()) {
        throw PreconditionError("U2: state size does not match the grid");
      }
      // f(x) ↦ f(x + a) is the multiplier e^{ika}.
      const double a = s * chain.u2_shift(t);
      const Eigen::VectorXd k = grid.wavenumbers();
      Eigen::VectorXcd multiplier(k.size());
      for (Eigen::Index j = 0; j < k.size(); ++j) {
        multiplier[j] = std::polar(1.0, k[j] * a);
      }
      Eigen::VectorXcd out = state.coefficients();
      apply_fourier_multiplier(FourierTransform(grid.n_points()), multiplier,
                               out);
      return state.with_coefficients(std::move(out));
    }
    case GaugeStage::kU3: {
      const std::complex<double> phase = chain.u3_phase(t);
      return state.with_coefficients(
          state.coefficients() * (s > 0 ? phase : std::conj(phase)));
    }
  }
  throw PreconditionError("unknown gauge stage");
}

WaveFunction to_reduced_frame(const WaveFunction& lab, double t, double eps,
                              const HermiteBasis& basis) {
  constexpr auto kAdj = GaugeDirection::kAdjoint;
  WaveFunction v = to_hermite(lab, basis);
  v = apply_gauge(GaugeStage::kU0, kAdj, v, t, eps, basis);
  v = to_grid(v, basis);
  v = apply_gauge(GaugeStage::kU1, kAdj, v, t, eps, basis);
  v = apply_gauge(GaugeStage::kU2, kAdj, v, t, eps, basis);
  return apply_gauge(GaugeStage::kU3, kAdj, v, t, eps, basis);
}

WaveFunction from_reduced_frame(const WaveFunction& reduced, double t,
                                double eps, const HermiteBasis& basis) {
  constexpr auto kFwd = GaugeDirection::kForward;
  WaveFunction u = apply_gauge(GaugeStage::kU3, kFwd, reduced, t, eps, basis);
  u = apply_gauge(GaugeStage::kU2, kFwd, u, t, eps, basis);
  u = apply_gauge(GaugeStage::kU1, kFwd, u, t, eps, basis);
  u = to_hermite(u, basis);
  u = apply_gauge(GaugeStage::kU0, kFwd, u, t, eps, basis);
  return to_grid(u, basis);
}

OperatorMatrix weyl_rotated(const ScalarFunction& symbol, double r,
                            double theta, double c, const HermiteBasis& basis) {
  const auto& x = basis.grid().nodes();
  const Eigen::MatrixXd& s = basis.synthesis();
  Eigen::VectorXd weights(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    weights[j] = basis.grid().spacing() * symbol(r * x[j] + c);
  }
  Eigen::MatrixXd galerkin = s.transpose() * weights.asDiagonal() * s;
  galerkin = 0.5 * (galerkin + galerkin.transpose()).eval();

  const int n = basis.n_basis();
  Eigen::MatrixXcd m(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      m(j, k) = galerkin(j, k) * std::polar(1.0, (j - k) * theta);
    }
  }
  return OperatorMatrix(std::move(m), Representation::kHermite,
                        {.hermitian = true});
}

OperatorMatrix weyl_linear(const ScalarFunction& symbol, double a, double b,
                           double c, const HermiteBasis& basis) {
  const double r = std::hypot(a, b);
  if (r == 0.0) {
    throw PreconditionError("linear symbol needs (a, b) != (0, 0)");
  }
  return weyl_rotated(symbol, r, std::atan2(b, a), c, basis);
}

namespace {

double reduced_offset(double t, double eps) { return -0.5 * eps * std::sin(t); }

double reduced_constant(double eps) { return (2.0 - eps * eps) / 4.0; }

}  // namespace

OperatorMatrix transformed_hamiltonian_L(double t, const SimParams& params,
                                         const HermiteBasis& basis) {
  const int n = basis.n_basis();
  const double eps = params.eps();
  Eigen::MatrixXcd h = eps * op_D(basis).entries() +
                       reduced_constant(eps) * Eigen::MatrixXcd::Identity(n, n);
  if (params.mu() != 0.0) {
    const auto& v = params.potential().eval;
    h += params.mu() *
         weyl_linear([&](double y) { return v(t, y); }, std::cos(t),
                     std::sin(t), reduced_offset(t, eps), basis)
             .entries();
  }
  return OperatorMatrix(std::move(h), Representation::kHermite,
                        {.hermitian = true});
}

ReducedFramePropagator::ReducedFramePropagator(const SimParams& params,
                                               const HermiteBasis& basis)
    : params_(params),
      basis_(basis),
      fft_(basis.grid().n_points()),
      wavenumbers_(basis.grid().wavenumbers()) {}

void ReducedFramePropagator::apply_perturbation(Eigen::VectorXcd& samples,
                                                double t, double tau) const {
  if (params_.mu() == 0.0) return;
  const int n = basis_.n_basis();
  const auto& x = basis_.grid().nodes();
  const auto& v = params_.potential().eval;
  const double offset = reduced_offset(t, params_.eps());

  // exp(−iτμW(t)) = e^{itH₀} exp(−iτμ V(t, X + offset)) e^{−itH₀}.
  Eigen::VectorXcd coefficients =
      exp_H0_phases(t, n).cwiseProduct(basis_.analyze(samples));
  Eigen::VectorXcd rotated = basis_.synthesize(coefficients);
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    rotated[j] *= std::polar(1.0, -tau * params_.mu() * v(t, x[j] + offset));
  }
  coefficients = exp_H0_phases(-t, n).cwiseProduct(basis_.analyze(rotated));
  samples = basis_.synthesize(coefficients);
}

void ReducedFramePropagator::step_in_place(Eigen::VectorXcd& samples, double t,
                                           double dt) const {
  const double mid = t + 0.5 * dt;
  const double eps = params_.eps();
  const double constant = reduced_constant(eps);
  apply_perturbation(samples, mid, 0.5 * dt);
  Eigen::VectorXcd multiplier(wavenumbers_.size());
  for (Eigen::Index j = 0; j < wavenumbers_.size(); ++j) {
    multiplier[j] = std::polar(1.0, -dt * (eps * wavenumbers_[j] + constant));
  }
  apply_fourier_multiplier(fft_, multiplier, samples);
  apply_perturbation(samples, mid, 0.5 * dt);
}

void ReducedFramePropagator::evolve_in_place(Eigen::VectorXcd& samples,
                                             double t0, double t1) const {
  const StepPlan plan = plan_steps(t1 - t0, params_.dt());
  for (long i = 0; i < plan.count; ++i) {
    step_in_place(samples, t0 + static_cast<double>(i) * plan.size, plan.size);
  }
}

FrameEquivalence compare_frames(const SimParams& params,
                                const HermiteBasis& basis,
                                const WaveFunction& initial, double t1) {
  if (initial.representation() != Representation::kGrid) {
    throw PreconditionError("frame comparison needs a GridRep initial state");
  }
  const double t_start = params.t0();
  const double t_end = t_start + t1;

  const WaveFunction lab =
      SplitStepPropagator(params).evolve(initial, t_start, t_end);

  const WaveFunction v0 =
      to_reduced_frame(initial, t_start, params.eps(), basis);
  Eigen::VectorXcd v = v0.coefficients();
  ReducedFramePropagator(params, basis).evolve_in_place(v, t_start, t_end);
  const WaveFunction mapped = from_reduced_frame(
      v0.with_coefficients(std::move(v)), t_end, params.eps(), basis);

  return {distance(lab, mapped), lab.norm(), mapped.norm()};
}

double verify_frame_equivalence(const SimParams& params, double t1) {
  if (!(t1 > 0.0 && t1 <= kTwoPi + 1e-12)) {
    throw PreconditionError("t1 must lie in (0, 2π]");
  }
  const HermiteBasis basis = build_hermite_basis(params.grid(), params.n_basis());
  const WaveFunction ground = hermite_state_on_grid(basis, 0).normalized();
  return compare_frames(params, basis, ground, t1).discrepancy;
}

}  // namespace floquet
