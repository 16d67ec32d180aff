#pragma once

#include <string>

#include "floquet/hermite.hpp"
#include "floquet/operator_matrix.hpp"
#include "floquet/propagator.hpp"
#include "floquet/tolerances.hpp"

namespace floquet {

/// Fiber of i[L, A] with A = X₁:
///   ε + μ sin t · (∂₁V)(t, X cos t + D sin t − (ε sin t / 2)).
OperatorMatrix commutator_fiber(double t, const SimParams& params,
                                const HermiteBasis& basis);

/// Fiber of i[[L, A]°, A]:
///   μ sin²t · (∂₁²V)(t, X cos t + D sin t − (ε sin t / 2)).
OperatorMatrix double_commutator_fiber(double t, const SimParams& params,
                                       const HermiteBasis& basis);

struct MourreReport {
  double eps = 0.0;
  double mu = 0.0;
  std::string potential;
  int t_samples = 0;
  int n_basis = 0;
  int grid_points = 0;
  double grid_half_width = 0.0;

  double min_eigenvalue_over_t = 0.0;
  double t_at_minimum = 0.0;
  /// ε − |μ|·sup|∂₁V|.
  double analytic_lower_bound = 0.0;
  /// min_eigenvalue_over_t − analytic_lower_bound; |slack| → 0 as n grows
  /// because the bound is attained by the continuum.
  double slack = 0.0;
  double double_commutator_norm = 0.0;
  /// |μ|·sup|∂₁²V|.
  double analytic_double_bound = 0.0;
  /// Largest ‖M − M†‖_max seen before symmetrization.
  double hermiticity_defect = 0.0;
  /// False when |μ|·sup|∂₁V| ≥ ε: no positivity is guaranteed.
  bool threshold_satisfied = false;
};

/// Lowest eigenvalue of the symmetrized commutator fiber and the largest
/// double-commutator norm over n_t uniform samples of [0, 2π).
/// Positivity is assessed fiberwise, which is exact since A acts pointwise in t.
MourreReport mourre_lower_bound(const SimParams& params, int n_t,
                                const Tolerances& tol = {});

/// Spectral norm of (M + M†)/2.
double symmetric_operator_norm(const Eigen::MatrixXcd& m);
/// Lowest eigenvalue of (M + M†)/2.
double symmetric_min_eigenvalue(const Eigen::MatrixXcd& m);

}  // namespace floquet
