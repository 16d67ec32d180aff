#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "floquet/floquet_operator.hpp"
#include "floquet/propagator.hpp"
#include "floquet/wavefunction.hpp"

namespace floquet {

// Everything here is a consistency proxy for absolutely continuous Floquet
// spectrum (gap shrinkage, delocalization, decay, unbounded growth). None of
// it certifies the spectral type of a finite matrix.
inline constexpr const char* kProxyLabel = "proxy";

struct ClassicalState {
  double x = 0.0;
  double p = 0.0;
  double t = 0.0;
};

struct ClassicalTrajectory {
  std::vector<ClassicalState> samples;
  /// Set when ½(x² + p²) exceeded the cap and integration stopped early.
  bool energy_capped = false;
};

inline constexpr double kClassicalEnergyCap = 1e12;

/// Integrates H = ½(p² + x²) + 2ε x sin t + μV(t, x) from init.t to t_end.
///
/// Fourth-order Yoshida composition of an exact harmonic rotation (which
/// also advances t) and a kick by the forcing; exact for ε = μ = 0.
/// Records every `stride`-th step plus the initial state.
/// Throws PreconditionError when dt > 2π/100 or dt ≤ 0.
ClassicalTrajectory classical_trajectory(const ClassicalState& init,
                                         const SimParams& params, double t_end,
                                         double dt, int stride = 1);

/// Phase-space radius √(x² + p²) at t = 2πm, m = 0..n_periods.
/// Requires a trajectory sampled with an integer number of steps per period.
std::vector<double> period_envelope(const ClassicalTrajectory& trajectory,
                                    int samples_per_period);

struct SpectrumStats {
  Eigen::VectorXd eigenphases;
  /// gaps[k] = phase[k+1] − phase[k], last entry wraps through 2π.
  Eigen::VectorXd gaps;
  double max_gap = 0.0;
  double mean_gap = 0.0;
  /// min(s_k, s_{k+1}) / max(s_k, s_{k+1}) over consecutive circular gaps;
  /// pairs of zero gaps are skipped.
  std::vector<double> gap_ratios;
  /// 1 / Σ|v_i|⁴ per normalized eigenvector, in [1, n_basis].
  Eigen::VectorXd participation_ratios;
  double median_participation = 0.0;
};

SpectrumStats spectrum_stats(const FloquetResult& result);

/// Values indexed by period m = 0..n_periods, with the first index at which
/// the truncation flag fired (values from there on are not trustworthy).
struct PeriodSeries {
  std::vector<double> values;
  std::optional<int> truncated_at;
};

/// s_m = |⟨ψ(0), ψ(2πm)⟩|². The flag fires when the evolved state's boundary
/// mass exceeds tol.propagation.
PeriodSeries survival_probability(const WaveFunction& state,
                                  const SimParams& params, int n_periods,
                                  const Tolerances& tol = {});

/// e_m = ⟨ψ(2πm), H₀ψ(2πm)⟩. The flag fires when e_m > n_basis/2 or the
/// boundary mass exceeds tol.propagation.
PeriodSeries energy_growth(const WaveFunction& state, const SimParams& params,
                           int n_periods, const Tolerances& tol = {});

/// Least-squares slope of log(values[m]) against log(m) for m in
/// [first, last]; stops early at `series.truncated_at`.
double fit_growth_exponent(const PeriodSeries& series, int first, int last);

/// Least-squares slope of values[m] against m for m in [first, last].
double fit_linear_slope(const std::vector<double>& values, int first, int last);

}  // namespace floquet
