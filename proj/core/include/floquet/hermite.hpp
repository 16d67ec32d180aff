#pragma once

#include <Eigen/Dense>

#include "floquet/grid.hpp"
#include "floquet/tolerances.hpp"

namespace floquet {

/// L²-normalized Hermite functions ψ_0..ψ_{n-1} at a single point.
///
/// Uses the three-term recurrence on normalized functions with running
/// rescaling, so high orders at large |x| neither overflow nor underflow
/// prematurely.
Eigen::VectorXd hermite_functions(double x, int n);

/// Hermite functions sampled at arbitrary points; column k is ψ_k.
Eigen::MatrixXd hermite_matrix(const Eigen::VectorXd& points, int n);

/// Smallest half-width accepted for an n-mode basis: classical turning point
/// of the top mode plus a tail margin of 3.
double required_half_width(int n_basis);

/// Eigenbasis of H₀ sampled on a grid.
class HermiteBasis {
 public:
  const Grid& grid() const { return grid_; }
  int n_basis() const { return static_cast<int>(synthesis_.cols()); }
  /// n_points × n_basis matrix; column k holds ψ_k at the grid nodes.
  const Eigen::MatrixXd& synthesis() const { return synthesis_; }
  /// max |(SᵀWS − I)_{jk}| with W = spacing·I.
  double gram_defect() const { return gram_defect_; }

  /// Quadrature projection of grid samples onto the basis.
  Eigen::VectorXcd analyze(const Eigen::VectorXcd& samples) const;
  /// Grid samples of a coefficient vector.
  Eigen::VectorXcd synthesize(const Eigen::VectorXcd& coefficients) const;

 private:
  friend HermiteBasis build_hermite_basis(const Grid&, int, bool,
                                          const Tolerances&);
  HermiteBasis(Grid grid, Eigen::MatrixXd synthesis, double gram_defect);

  Grid grid_;
  Eigen::MatrixXd synthesis_;
  double gram_defect_;
};

/// Throws PreconditionError when n_basis exceeds the grid size or (unless
/// `allow_narrow_grid`) the grid is narrower than required_half_width, and
/// ResolutionError when the Gram defect exceeds `tol.orthonormality`.
HermiteBasis build_hermite_basis(const Grid& grid, int n_basis,
                                 bool allow_narrow_grid = false,
                                 const Tolerances& tol = {});

}  // namespace floquet
