#include "floquet/grid.hpp"

#include <numbers>
#include <string>

#include "floquet/error.hpp"

namespace floquet {

Grid::Grid(int n_points, double x_max) : n_points_(n_points), x_max_(x_max) {
  if (n_points < 8) {
    throw PreconditionError("grid needs at least 8 points, got " +
                            std::to_string(n_points));
  }
  if (n_points % 2 != 0) {
    throw PreconditionError("grid needs an even number of points, got " +
                            std::to_string(n_points));
  }
  if (!(x_max > 0.0)) {
    throw PreconditionError("grid half-width must be positive");
  }
  spacing_ = 2.0 * x_max / n_points;
  nodes_.resize(n_points);
  for (int j = 0; j < n_points; ++j) {
    nodes_[j] = -x_max + j * spacing_;
  }
}

Eigen::VectorXd Grid::wavenumbers() const {
  Eigen::VectorXd k(n_points_);
  const double dk = 2.0 * std::numbers::pi / (n_points_ * spacing_);
  for (int j = 0; j < n_points_; ++j) {
    const int m = j < n_points_ / 2 ? j : j - n_points_;
    k[j] = m * dk;
  }
  return k;
}

double Grid::k_max() const { return std::numbers::pi / spacing_; }

Grid make_grid(int n_points, double x_max) { return Grid(n_points, x_max); }

}  // namespace floquet
