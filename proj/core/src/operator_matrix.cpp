#include "floquet/operator_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "floquet/error.hpp"

namespace floquet {

using namespace std::complex_literals;

OperatorMatrix::OperatorMatrix(Eigen::MatrixXcd entries, Representation basis,
                               MatrixFlags flags, double tolerance)
    : entries_(std::move(entries)), basis_(basis), flags_(flags) {
  if (entries_.rows() != entries_.cols()) {
    throw PreconditionError("operator matrix must be square");
  }
  if (flags_.hermitian) {
    const double defect = hermiticity_defect(entries_);
    if (defect > tolerance) {
      std::ostringstream msg;
      msg << "matrix flagged Hermitian has defect " << defect;
      throw InvariantError(msg.str());
    }
  }
  if (flags_.unitary) {
    const double defect = unitarity_defect(entries_);
    if (defect > tolerance) {
      std::ostringstream msg;
      msg << "matrix flagged unitary has defect " << defect;
      throw InvariantError(msg.str());
    }
  }
}

double max_abs(const Eigen::MatrixXcd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const Eigen::MatrixXcd& m) {
  return max_abs(m - m.adjoint());
}

double unitarity_defect(const Eigen::MatrixXcd& m) {
  return max_abs(m.adjoint() * m -
                 Eigen::MatrixXcd::Identity(m.cols(), m.cols()));
}

Eigen::MatrixXcd interior_block(const Eigen::MatrixXcd& m, Eigen::Index drop) {
  const Eigen::Index keep = std::max<Eigen::Index>(m.rows() - drop, 0);
  return m.topLeftCorner(keep, keep);
}

Eigen::Index truncation_margin(Eigen::Index n_basis) {
  return std::max<Eigen::Index>(2, n_basis / 16);
}

OperatorMatrix op_X(const HermiteBasis& basis) {
  const int n = basis.n_basis();
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k + 1 < n; ++k) {
    const double v = std::sqrt((k + 1) / 2.0);
    x(k, k + 1) = v;
    x(k + 1, k) = v;
  }
  return OperatorMatrix(std::move(x), Representation::kHermite,
                        {.hermitian = true});
}

OperatorMatrix op_D(const HermiteBasis& basis) {
  const int n = basis.n_basis();
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k + 1 < n; ++k) {
    const double v = std::sqrt((k + 1) / 2.0);
    d(k, k + 1) = -1i * v;
    d(k + 1, k) = 1i * v;
  }
  return OperatorMatrix(std::move(d), Representation::kHermite,
                        {.hermitian = true});
}

OperatorMatrix op_H0(const HermiteBasis& basis) {
  const int n = basis.n_basis();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k < n; ++k) h(k, k) = static_cast<double>(k);
  return OperatorMatrix(std::move(h), Representation::kHermite,
                        {.hermitian = true});
}

Eigen::VectorXcd exp_H0_phases(double t, int n_basis) {
  Eigen::VectorXcd phases(n_basis);
  for (int k = 0; k < n_basis; ++k) {
    const double angle = std::remainder(-t * k, 2.0 * std::numbers::pi);
    phases[k] = std::polar(1.0, angle);
  }
  return phases;
}

OperatorMatrix exp_H0(double t, int n_basis) {
  return OperatorMatrix(exp_H0_phases(t, n_basis).asDiagonal().toDenseMatrix(),
                        Representation::kHermite, {.unitary = true});
}

}  // namespace floquet
