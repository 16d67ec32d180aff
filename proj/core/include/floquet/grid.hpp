#pragma once

#include <Eigen/Dense>

namespace floquet {

/// Uniform periodic grid on [-x_max, x_max) with an even number of nodes.
class Grid {
 public:
  Grid(int n_points, double x_max);

  int n_points() const { return n_points_; }
  double x_max() const { return x_max_; }
  double spacing() const { return spacing_; }
  const Eigen::VectorXd& nodes() const { return nodes_; }

  /// Angular wavenumbers in FFT order: 2π·fftfreq(n_points, spacing).
  Eigen::VectorXd wavenumbers() const;
  /// Largest representable |k| (the Nyquist wavenumber π/spacing).
  double k_max() const;

 private:
  int n_points_;
  double x_max_;
  double spacing_;
  Eigen::VectorXd nodes_;
};

Grid make_grid(int n_points, double x_max);

}  // namespace floquet
