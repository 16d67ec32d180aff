#include "floquet/wavefunction.hpp"

#include <cmath>

#include "floquet/error.hpp"

namespace floquet {

const char* to_string(Representation rep) {
  switch (rep) {
    case Representation::kGrid:
      return "grid";
    case Representation::kHermite:
      return "hermite";
  }
  return "unknown";
}

WaveFunction::WaveFunction(Representation rep, Eigen::VectorXcd coefficients,
                           double weight)
    : rep_(rep),
      coefficients_(std::move(coefficients)),
      weight_(weight),
      norm_(std::sqrt(weight * coefficients_.squaredNorm())) {}

WaveFunction WaveFunction::on_grid(const Grid& grid,
                                   Eigen::VectorXcd samples) {
  if (samples.size() != grid.n_points()) {
    throw PreconditionError("sample count does not match grid size");
  }
  return WaveFunction(Representation::kGrid, std::move(samples),
                      grid.spacing());
}

WaveFunction WaveFunction::in_hermite(Eigen::VectorXcd coefficients) {
  return WaveFunction(Representation::kHermite, std::move(coefficients), 1.0);
}

WaveFunction WaveFunction::normalized() const {
  if (norm_ == 0.0) {
    throw PreconditionError("cannot normalize the zero state");
  }
  return with_coefficients(coefficients_ / norm_);
}

WaveFunction WaveFunction::with_coefficients(
    Eigen::VectorXcd coefficients) const {
  if (coefficients.size() != coefficients_.size()) {
    throw PreconditionError("coefficient count changed");
  }
  return WaveFunction(rep_, std::move(coefficients), weight_);
}

WaveFunction to_hermite(const WaveFunction& state, const HermiteBasis& basis) {
  if (state.representation() == Representation::kHermite) {
    if (state.coefficients().size() != basis.n_basis()) {
      throw PreconditionError("Hermite state size does not match basis");
    }
    return state;
  }
  if (state.coefficients().size() != basis.grid().n_points()) {
    throw PreconditionError("grid state size does not match basis grid");
  }
  return WaveFunction::in_hermite(basis.analyze(state.coefficients()));
}

WaveFunction to_grid(const WaveFunction& state, const HermiteBasis& basis) {
  if (state.representation() == Representation::kGrid) {
    if (state.coefficients().size() != basis.grid().n_points()) {
      throw PreconditionError("grid state size does not match basis grid");
    }
    return state;
  }
  if (state.coefficients().size() != basis.n_basis()) {
    throw PreconditionError("Hermite state size does not match basis");
  }
  return WaveFunction::on_grid(basis.grid(),
                               basis.synthesize(state.coefficients()));
}

namespace {

void require_compatible(const WaveFunction& a, const WaveFunction& b) {
  if (a.representation() != b.representation() ||
      a.coefficients().size() != b.coefficients().size() ||
      a.weight() != b.weight()) {
    throw PreconditionError("states live in different representations");
  }
}

}  // namespace

std::complex<double> inner_product(const WaveFunction& a,
                                   const WaveFunction& b) {
  require_compatible(a, b);
  return a.weight() * a.coefficients().dot(b.coefficients());
}

double distance(const WaveFunction& a, const WaveFunction& b) {
  require_compatible(a, b);
  return std::sqrt(a.weight() *
                   (a.coefficients() - b.coefficients()).squaredNorm());
}

WaveFunction hermite_state_on_grid(const HermiteBasis& basis, int k) {
  if (k < 0 || k >= basis.n_basis()) {
    throw PreconditionError("Hermite index out of range");
  }
  return WaveFunction::on_grid(
      basis.grid(), basis.synthesis().col(k).cast<std::complex<double>>());
}

}  // namespace floquet
