#pragma once

#include <complex>

#include <Eigen/Dense>

#include "floquet/hermite.hpp"
#include "floquet/tolerances.hpp"
#include "floquet/wavefunction.hpp"

namespace floquet {

struct MatrixFlags {
  bool hermitian = false;
  bool unitary = false;
};

/// Dense complex matrix tagged with its basis. Flags that are set have been
/// verified against the tolerance passed at construction.
class OperatorMatrix {
 public:
  OperatorMatrix(Eigen::MatrixXcd entries, Representation basis,
                 MatrixFlags flags = {}, double tolerance = 1e-12);

  const Eigen::MatrixXcd& entries() const { return entries_; }
  Representation basis() const { return basis_; }
  bool hermitian() const { return flags_.hermitian; }
  bool unitary() const { return flags_.unitary; }
  Eigen::Index size() const { return entries_.rows(); }

  std::complex<double> operator()(Eigen::Index i, Eigen::Index j) const {
    return entries_(i, j);
  }

 private:
  Eigen::MatrixXcd entries_;
  Representation basis_;
  MatrixFlags flags_;
};

double max_abs(const Eigen::MatrixXcd& m);
double hermiticity_defect(const Eigen::MatrixXcd& m);
double unitarity_defect(const Eigen::MatrixXcd& m);
/// Leading (n − drop) × (n − drop) block.
Eigen::MatrixXcd interior_block(const Eigen::MatrixXcd& m, Eigen::Index drop);
/// Rows/columns discarded by operator-identity comparisons: max(2, n/16).
Eigen::Index truncation_margin(Eigen::Index n_basis);

/// Position operator in HermiteRep, (a + a†)/√2.
OperatorMatrix op_X(const HermiteBasis& basis);
/// Momentum operator −i d/dx in HermiteRep, (a − a†)/(i√2).
OperatorMatrix op_D(const HermiteBasis& basis);
/// H₀ = −½Δ + ½x² − ½ in HermiteRep, diag(0, 1, …, n−1).
OperatorMatrix op_H0(const HermiteBasis& basis);

/// exp(−i t H₀) in HermiteRep; phases reduced mod 2π before evaluation.
OperatorMatrix exp_H0(double t, int n_basis);
/// Diagonal of exp(−i t H₀).
Eigen::VectorXcd exp_H0_phases(double t, int n_basis);

}  // namespace floquet
