#pragma once

#include <Eigen/Dense>

#include "floquet/operator_matrix.hpp"
#include "floquet/propagator.hpp"
#include "floquet/tolerances.hpp"

namespace floquet {

/// Truncated one-period propagator U(t0 + 2π, t0) in HermiteRep.
struct FloquetResult {
  /// Unitary matrix used for the eigen-decomposition (polar-projected when
  /// the compressed matrix was not unitary to polar_threshold).
  OperatorMatrix floquet_matrix;
  /// Compressed matrix ⟨ψ_j, U ψ_k⟩ before any correction.
  Eigen::MatrixXcd raw_matrix;
  /// Sorted ascending in [0, 2π).
  Eigen::VectorXd eigenphases;
  /// Column k belongs to eigenphases[k], unit 2-norm.
  Eigen::MatrixXcd eigenvectors;
  /// ‖F†F − I‖_max of raw_matrix: leakage out of the truncated basis.
  double unitarity_defect = 0.0;
  /// Largest norm drift or boundary mass among the propagated columns.
  double propagation_defect = 0.0;
  bool polar_corrected = false;

  int n_basis = 0;
  int steps_per_period = 0;
  double dt = 0.0;
  int grid_points = 0;
  double grid_half_width = 0.0;
};

/// Nearest unitary matrix in Frobenius norm (polar factor via SVD).
Eigen::MatrixXcd nearest_unitary(const Eigen::MatrixXcd& m);

/// Column j is the propagated ψ_j; columns are evolved independently on up
/// to `n_threads` threads (0 picks hardware concurrency) and assembled in
/// index order, so the result does not depend on the thread count.
/// Throws ResolutionError when propagation_defect > tol.unitarity_abort.
FloquetResult floquet_matrix(const SimParams& params, const Tolerances& tol = {},
                             unsigned n_threads = 0);

}  // namespace floquet
