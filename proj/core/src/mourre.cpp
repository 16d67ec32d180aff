#include "floquet/mourre.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "floquet/error.hpp"
#include "floquet/transforms.hpp"

namespace floquet {
namespace {

// Argument shift of the perturbation in the reduced frame.
double offset(double t, double eps) { return -0.5 * eps * std::sin(t); }

Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXcd& m) {
  const Eigen::MatrixXcd sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym,
                                                         Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw InvariantError("Hermitian eigensolver did not converge");
  }
  return solver.eigenvalues();
}

}  // namespace

double symmetric_min_eigenvalue(const Eigen::MatrixXcd& m) {
  return symmetric_eigenvalues(m).minCoeff();
}

double symmetric_operator_norm(const Eigen::MatrixXcd& m) {
  return symmetric_eigenvalues(m).cwiseAbs().maxCoeff();
}

OperatorMatrix commutator_fiber(double t, const SimParams& params,
                                const HermiteBasis& basis) {
  const int n = basis.n_basis();
  Eigen::MatrixXcd c = params.eps() * Eigen::MatrixXcd::Identity(n, n);
  const double weight = params.mu() * std::sin(t);
  if (weight != 0.0) {
    const auto& grad = params.potential().grad_x1;
    c += weight * weyl_linear([&](double y) { return grad(t, y); }, std::cos(t),
                              std::sin(t), offset(t, params.eps()), basis)
                      .entries();
  }
  return OperatorMatrix(std::move(c), Representation::kHermite,
                        {.hermitian = true});
}

OperatorMatrix double_commutator_fiber(double t, const SimParams& params,
                                       const HermiteBasis& basis) {
  const int n = basis.n_basis();
  const double s = std::sin(t);
  const double weight = params.mu() * s * s;
  if (weight == 0.0) {
    return OperatorMatrix(Eigen::MatrixXcd::Zero(n, n),
                          Representation::kHermite, {.hermitian = true});
  }
  const auto& hess = params.potential().hess_x1;
  return OperatorMatrix(
      weight * weyl_linear([&](double y) { return hess(t, y); }, std::cos(t),
                           s, offset(t, params.eps()), basis)
                   .entries(),
      Representation::kHermite, {.hermitian = true});
}

MourreReport mourre_lower_bound(const SimParams& params, int n_t,
                                const Tolerances& tol) {
  if (n_t < 1) throw PreconditionError("need at least one t sample");
  const HermiteBasis basis =
      build_hermite_basis(params.grid(), params.n_basis(), false, tol);

  MourreReport report;
  report.eps = params.eps();
  report.mu = params.mu();
  report.potential = params.potential().name;
  report.t_samples = n_t;
  report.n_basis = params.n_basis();
  report.grid_points = params.grid().n_points();
  report.grid_half_width = params.grid().x_max();
  report.analytic_lower_bound =
      params.eps() - std::abs(params.mu()) * params.potential().sup_grad_x1;
  report.analytic_double_bound =
      std::abs(params.mu()) * params.potential().sup_hess_x1;
  report.threshold_satisfied = params.threshold().satisfied;

  report.min_eigenvalue_over_t = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_t; ++i) {
    const double t = kTwoPi * i / n_t;
    const OperatorMatrix c = commutator_fiber(t, params, basis);
    report.hermiticity_defect =
        std::max(report.hermiticity_defect, hermiticity_defect(c.entries()));
    const double lowest = symmetric_min_eigenvalue(c.entries());
    if (lowest < report.min_eigenvalue_over_t) {
      report.min_eigenvalue_over_t = lowest;
      report.t_at_minimum = t;
    }
    const OperatorMatrix dc = double_commutator_fiber(t, params, basis);
    report.double_commutator_norm = std::max(
        report.double_commutator_norm, symmetric_operator_norm(dc.entries()));
  }
  report.slack = report.min_eigenvalue_over_t - report.analytic_lower_bound;
  return report;
}

}  // namespace floquet
