#include "floquet/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "floquet/error.hpp"

namespace floquet {
namespace {

struct ExtendedState {
  double x;
  double p;
  double t;
};

// Exact harmonic flow; also advances the clock.
void rotate(ExtendedState& s, double tau) {
  const double c = std::cos(tau);
  const double sn = std::sin(tau);
  const double x = s.x * c + s.p * sn;
  const double p = -s.x * sn + s.p * c;
  s.x = x;
  s.p = p;
  s.t += tau;
}

void kick(ExtendedState& s, double tau, const SimParams& params) {
  double force = 2.0 * params.eps() * std::sin(s.t);
  if (params.mu() != 0.0) force += params.mu() * params.potential().grad_x1(s.t, s.x);
  s.p -= tau * force;
}

void strang(ExtendedState& s, double tau, const SimParams& params) {
  rotate(s, 0.5 * tau);
  kick(s, tau, params);
  rotate(s, 0.5 * tau);
}

// Yoshida triple jump.
const double kW1 = 1.0 / (2.0 - std::cbrt(2.0));
const double kW0 = -std::cbrt(2.0) / (2.0 - std::cbrt(2.0));

}  // namespace

ClassicalTrajectory classical_trajectory(const ClassicalState& init,
                                         const SimParams& params, double t_end,
                                         double dt, int stride) {
  if (!(dt > 0.0) || dt > kTwoPi / 100.0 * (1.0 + 1e-12)) {
    throw PreconditionError("classical step must satisfy 0 < dt <= 2π/100");
  }
  if (stride < 1) throw PreconditionError("stride must be positive");

  ClassicalTrajectory out;
  out.samples.push_back(init);
  const double span = t_end - init.t;
  if (span <= 0.0) return out;
  const StepPlan plan = plan_steps(span, dt);

  ExtendedState s{init.x, init.p, init.t};
  for (long i = 1; i <= plan.count; ++i) {
    const double start = init.t + static_cast<double>(i - 1) * plan.size;
    s.t = start;
    strang(s, kW1 * plan.size, params);
    strang(s, kW0 * plan.size, params);
    strang(s, kW1 * plan.size, params);
    s.t = init.t + static_cast<double>(i) * plan.size;
    if (0.5 * (s.x * s.x + s.p * s.p) > kClassicalEnergyCap ||
        !std::isfinite(s.x) || !std::isfinite(s.p)) {
      out.energy_capped = true;
      break;
    }
    if (i % stride == 0 || i == plan.count) {
      out.samples.push_back({s.x, s.p, s.t});
    }
  }
  return out;
}

std::vector<double> period_envelope(const ClassicalTrajectory& trajectory,
                                    int samples_per_period) {
  if (samples_per_period < 1) {
    throw PreconditionError("samples_per_period must be positive");
  }
  std::vector<double> radii;
  for (std::size_t i = 0; i < trajectory.samples.size();
       i += static_cast<std::size_t>(samples_per_period)) {
    const auto& s = trajectory.samples[i];
    radii.push_back(std::hypot(s.x, s.p));
  }
  return radii;
}

SpectrumStats spectrum_stats(const FloquetResult& result) {
  SpectrumStats stats;
  stats.eigenphases = result.eigenphases;
  std::sort(stats.eigenphases.begin(), stats.eigenphases.end());
  const Eigen::Index n = stats.eigenphases.size();
  if (n == 0) throw PreconditionError("empty spectrum");

  stats.gaps.resize(n);
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    stats.gaps[k] = stats.eigenphases[k + 1] - stats.eigenphases[k];
  }
  stats.gaps[n - 1] = kTwoPi - stats.eigenphases[n - 1] + stats.eigenphases[0];
  stats.max_gap = stats.gaps.maxCoeff();
  stats.mean_gap = kTwoPi / static_cast<double>(n);

  for (Eigen::Index k = 0; k < n && n > 1; ++k) {
    const double a = stats.gaps[k];
    const double b = stats.gaps[(k + 1) % n];
    const double hi = std::max(a, b);
    if (hi > 0.0) stats.gap_ratios.push_back(std::min(a, b) / hi);
  }

  stats.participation_ratios.resize(result.eigenvectors.cols());
  for (Eigen::Index k = 0; k < result.eigenvectors.cols(); ++k) {
    const Eigen::VectorXcd v = result.eigenvectors.col(k).normalized();
    stats.participation_ratios[k] = 1.0 / v.cwiseAbs2().cwiseAbs2().sum();
  }
  std::vector<double> sorted(stats.participation_ratios.begin(),
                             stats.participation_ratios.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t m = sorted.size();
  stats.median_participation =
      m % 2 == 1 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
  return stats;
}

namespace {

void require_normalized_grid_state(const WaveFunction& state,
                                   const SimParams& params,
                                   const Tolerances& tol) {
  if (state.representation() != Representation::kGrid ||
      state.coefficients().size() != params.grid().n_points()) {
    throw PreconditionError("series need a GridRep state on the parameter grid");
  }
  if (std::abs(state.norm() - 1.0) > tol.normalization) {
    throw PreconditionError("series need a normalized state");
  }
}

template <typename Observe>
PeriodSeries period_series(const WaveFunction& state, const SimParams& params,
                           int n_periods, const Tolerances& tol,
                           Observe observe) {
  if (n_periods < 0) throw PreconditionError("n_periods must be non-negative");
  require_normalized_grid_state(state, params, tol);
  const SplitStepPropagator propagator(params);
  PeriodSeries series;
  Eigen::VectorXcd samples = state.coefficients();
  for (int m = 0; m <= n_periods; ++m) {
    if (m > 0) {
      const double start = params.t0() + kTwoPi * (m - 1);
      propagator.evolve_in_place(samples, start, start + kTwoPi);
    }
    const auto [value, flagged] = observe(samples);
    series.values.push_back(value);
    const bool edge =
        boundary_mass(samples, params.grid(), tol.boundary_fraction) >
        tol.propagation;
    if ((flagged || edge) && !series.truncated_at) series.truncated_at = m;
  }
  return series;
}

}  // namespace

PeriodSeries survival_probability(const WaveFunction& state,
                                  const SimParams& params, int n_periods,
                                  const Tolerances& tol) {
  const double h = params.grid().spacing();
  const Eigen::VectorXcd initial = state.coefficients();
  return period_series(state, params, n_periods, tol,
                       [&](const Eigen::VectorXcd& samples) {
                         const double s = std::norm(h * initial.dot(samples));
                         return std::pair{s, false};
                       });
}

PeriodSeries energy_growth(const WaveFunction& state, const SimParams& params,
                           int n_periods, const Tolerances& tol) {
  const Grid& grid = params.grid();
  const double edge = 0.5 * params.n_basis();
  return period_series(state, params, n_periods, tol,
                       [&](const Eigen::VectorXcd& samples) {
                         const double e = harmonic_energy(
                             WaveFunction::on_grid(grid, samples), grid);
                         return std::pair{e, e > edge};
                       });
}

double fit_linear_slope(const std::vector<double>& values, int first,
                        int last) {
  if (first < 0 || last >= static_cast<int>(values.size()) || last <= first) {
    throw PreconditionError("slope fit needs at least two points in range");
  }
  const int n = last - first + 1;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int m = first; m <= last; ++m) {
    sx += m;
    sy += values[m];
    sxx += static_cast<double>(m) * m;
    sxy += m * values[m];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double fit_growth_exponent(const PeriodSeries& series, int first, int last) {
  if (series.truncated_at) last = std::min(last, *series.truncated_at - 1);
  if (first < 1 || last >= static_cast<int>(series.values.size()) ||
      last <= first) {
    std::ostringstream msg;
    msg << "exponent fit needs two untruncated periods with m >= 1 (range "
        << first << ".." << last << ")";
    throw PreconditionError(msg.str());
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (int m = first; m <= last; ++m) {
    const double v = series.values[m];
    if (!(v > 0.0)) throw PreconditionError("exponent fit needs positive values");
    const double lx = std::log(static_cast<double>(m));
    const double ly = std::log(v);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace floquet
