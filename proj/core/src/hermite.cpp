#include "floquet/hermite.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "floquet/error.hpp"

namespace floquet {
namespace {

constexpr double kRescaleAbove = 1e150;

}  // namespace

Eigen::VectorXd hermite_functions(double x, int n) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  if (n <= 0) return out;

  // Run the recurrence on ψ_k·e^{x²/2}·π^{1/4} and fold the Gaussian back in
  // through a log-scale, so large orders survive where e^{−x²/2} underflows.
  const double log_gauss = -0.5 * x * x - 0.25 * std::log(std::numbers::pi);
  double log_scale = 0.0;
  double prev = 0.0;
  double curr = 1.0;
  out[0] = std::exp(log_gauss);
  for (int k = 0; k + 1 < n; ++k) {
    const double next = std::sqrt(2.0 / (k + 1)) * x * curr -
                        std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
    prev = curr;
    curr = next;
    if (std::abs(curr) > kRescaleAbove) {
      prev /= kRescaleAbove;
      curr /= kRescaleAbove;
      log_scale += std::log(kRescaleAbove);
    }
    const double magnitude = std::abs(curr);
    out[k + 1] = magnitude == 0.0
                     ? 0.0
                     : std::copysign(std::exp(std::log(magnitude) + log_scale +
                                              log_gauss),
                                     curr);
  }
  return out;
}

Eigen::MatrixXd hermite_matrix(const Eigen::VectorXd& points, int n) {
  Eigen::MatrixXd m(points.size(), n);
  for (Eigen::Index j = 0; j < points.size(); ++j) {
    m.row(j) = hermite_functions(points[j], n).transpose();
  }
  return m;
}

double required_half_width(int n_basis) {
  return std::sqrt(2.0 * n_basis) + 3.0;
}

HermiteBasis::HermiteBasis(Grid grid, Eigen::MatrixXd synthesis,
                           double gram_defect)
    : grid_(std::move(grid)),
      synthesis_(std::move(synthesis)),
      gram_defect_(gram_defect) {}

Eigen::VectorXcd HermiteBasis::analyze(const Eigen::VectorXcd& samples) const {
  return grid_.spacing() * (synthesis_.transpose().cast<std::complex<double>>() *
                            samples);
}

Eigen::VectorXcd HermiteBasis::synthesize(
    const Eigen::VectorXcd& coefficients) const {
  return synthesis_.cast<std::complex<double>>() * coefficients;
}

HermiteBasis build_hermite_basis(const Grid& grid, int n_basis,
                                 bool allow_narrow_grid,
                                 const Tolerances& tol) {
  if (n_basis < 1) {
    throw PreconditionError("basis needs at least one function");
  }
  if (n_basis > grid.n_points()) {
    std::ostringstream msg;
    msg << "n_basis " << n_basis << " exceeds grid size " << grid.n_points();
    throw PreconditionError(msg.str());
  }
  if (!allow_narrow_grid && grid.x_max() < required_half_width(n_basis)) {
    std::ostringstream msg;
    msg << "grid half-width " << grid.x_max() << " below "
        << required_half_width(n_basis) << " required for " << n_basis
        << " Hermite functions";
    throw PreconditionError(msg.str());
  }

  Eigen::MatrixXd synthesis = hermite_matrix(grid.nodes(), n_basis);
  const Eigen::MatrixXd gram =
      grid.spacing() * (synthesis.transpose() * synthesis);
  const double defect =
      (gram - Eigen::MatrixXd::Identity(n_basis, n_basis)).cwiseAbs().maxCoeff();
  if (defect > tol.orthonormality) {
    std::ostringstream msg;
    msg << "Hermite basis orthonormality defect " << defect << " exceeds "
        << tol.orthonormality << " (grid " << grid.n_points() << " points, "
        << "half-width " << grid.x_max() << ", " << n_basis << " functions)";
    throw ResolutionError(msg.str());
  }
  return HermiteBasis(grid, std::move(synthesis), defect);
}

}  // namespace floquet
