#include "floquet/floquet_operator.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <sstream>
#include <thread>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "floquet/error.hpp"

namespace floquet {

Eigen::MatrixXcd nearest_unitary(const Eigen::MatrixXcd& m) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullU |
                                             Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

namespace {

double wrap_phase(std::complex<double> z) {
  double a = std::arg(z);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a -= kTwoPi;
  return a;
}

}  // namespace

FloquetResult floquet_matrix(const SimParams& params, const Tolerances& tol,
                             unsigned n_threads) {
  const HermiteBasis basis =
      build_hermite_basis(params.grid(), params.n_basis(), false, tol);
  const SplitStepPropagator propagator(params);
  const int n = params.n_basis();
  const int n_points = params.grid().n_points();

  Eigen::MatrixXcd evolved(n_points, n);
  std::vector<double> column_defect(n, 0.0);

  if (n_threads == 0) n_threads = std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(n));
  std::vector<std::exception_ptr> failures(n_threads);

  auto worker = [&](unsigned id) {
    try {
      for (int j = static_cast<int>(id); j < n; j += static_cast<int>(n_threads)) {
        Eigen::VectorXcd column =
            basis.synthesis().col(j).cast<std::complex<double>>();
        const double before = column.norm();
        propagator.evolve_in_place(column, params.t0(), params.t0() + kTwoPi);
        const double drift = std::abs(column.norm() - before) / before;
        column_defect[j] = std::max(
            drift, boundary_mass(column, params.grid(), tol.boundary_fraction));
        evolved.col(j) = column;
      }
    } catch (...) {
      failures[id] = std::current_exception();
    }
  };
  if (n_threads == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_threads);
    for (unsigned id = 0; id < n_threads; ++id) pool.emplace_back(worker, id);
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }

  const Eigen::MatrixXcd raw =
      params.grid().spacing() *
      (basis.synthesis().transpose().cast<std::complex<double>>() * evolved);
  const double compressed_defect = unitarity_defect(raw);
  const double propagation_defect =
      *std::max_element(column_defect.begin(), column_defect.end());
  if (propagation_defect > tol.unitarity_abort) {
    std::ostringstream msg;
    msg << "Floquet columns under-resolved: propagation defect "
        << propagation_defect << " exceeds " << tol.unitarity_abort
        << " (enlarge the grid or refine its spacing)";
    throw ResolutionError(msg.str());
  }

  // Eigenphases of a merely near-unitary matrix are ill-conditioned off the
  // unit circle, so project first.
  const bool polar = compressed_defect > tol.polar_threshold;
  Eigen::MatrixXcd unitary = polar ? nearest_unitary(raw) : raw;

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(unitary, true);
  if (solver.info() != Eigen::Success) {
    throw InvariantError("Floquet eigen-decomposition did not converge");
  }
  std::vector<double> phases(n);
  for (int k = 0; k < n; ++k) phases[k] = wrap_phase(solver.eigenvalues()[k]);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return phases[a] < phases[b]; });

  Eigen::VectorXd sorted_phases(n);
  Eigen::MatrixXcd vectors(n, n);
  for (int k = 0; k < n; ++k) {
    sorted_phases[k] = phases[order[k]];
    vectors.col(k) = solver.eigenvectors().col(order[k]).normalized();
  }

  return FloquetResult{
      .floquet_matrix =
          OperatorMatrix(std::move(unitary), Representation::kHermite,
                         {.unitary = true}, std::max(tol.polar_threshold, 1e-10)),
      .raw_matrix = raw,
      .eigenphases = std::move(sorted_phases),
      .eigenvectors = std::move(vectors),
      .unitarity_defect = compressed_defect,
      .propagation_defect = propagation_defect,
      .polar_corrected = polar,
      .n_basis = n,
      .steps_per_period = params.steps_per_period(),
      .dt = params.dt(),
      .grid_points = n_points,
      .grid_half_width = params.grid().x_max(),
  };
}

}  // namespace floquet
