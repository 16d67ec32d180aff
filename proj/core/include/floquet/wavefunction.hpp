#pragma once

#include <Eigen/Dense>

#include "floquet/grid.hpp"
#include "floquet/hermite.hpp"

namespace floquet {

enum class Representation { kGrid, kHermite };

const char* to_string(Representation rep);

/// A state vector tagged with the representation its coefficients live in.
///
/// Grid coefficients are point samples, so the L² norm carries the grid
/// spacing as quadrature weight; Hermite coefficients use the plain 2-norm.
class WaveFunction {
 public:
  static WaveFunction on_grid(const Grid& grid, Eigen::VectorXcd samples);
  static WaveFunction in_hermite(Eigen::VectorXcd coefficients);

  Representation representation() const { return rep_; }
  const Eigen::VectorXcd& coefficients() const { return coefficients_; }
  double weight() const { return weight_; }
  double norm() const { return norm_; }

  WaveFunction normalized() const;
  /// Same representation and weight, new coefficients.
  WaveFunction with_coefficients(Eigen::VectorXcd coefficients) const;

 private:
  WaveFunction(Representation rep, Eigen::VectorXcd coefficients,
               double weight);

  Representation rep_;
  Eigen::VectorXcd coefficients_;
  double weight_;
  double norm_;
};

WaveFunction to_hermite(const WaveFunction& state, const HermiteBasis& basis);
WaveFunction to_grid(const WaveFunction& state, const HermiteBasis& basis);

/// ⟨a, b⟩ for states in the same representation.
std::complex<double> inner_product(const WaveFunction& a,
                                   const WaveFunction& b);
/// ‖a − b‖ for states in the same representation.
double distance(const WaveFunction& a, const WaveFunction& b);

/// ψ_k sampled on the basis grid, as a GridRep state.
WaveFunction hermite_state_on_grid(const HermiteBasis& basis, int k);

}  // namespace floquet
