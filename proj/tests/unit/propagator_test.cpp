#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "floquet/error.hpp"
#include "floquet/propagator.hpp"
#include "oracles.hpp"

namespace floquet {
namespace {

using namespace std::complex_literals;
constexpr double kPi = std::numbers::pi;

SimParams make_params(double eps, double mu, const char* potential,
                      int steps = 1024, int n_points = 512,
                      double x_max = 20.0) {
  return SimParams(eps, mu, builtin_potential(potential),
                   make_grid(n_points, x_max), 32, steps);
}

WaveFunction ground(const HermiteBasis& basis) {
  return hermite_state_on_grid(basis, 0).normalized();
}

TEST(ClassicalSolutionTest, MatchesRk4Oracle) {
  for (double eps : {0.5, 0.4, 1.3}) {
    for (double t : {0.5, 2 * kPi, 7.3, 20 * kPi}) {
      const auto oracle = testing::forced_oscillator_rk4(eps, t, 200000);
      const PhasePoint c = forced_classical_solution(t, eps);
      EXPECT_NEAR(c.x, oracle[0], 1e-9 * (1 + t)) << eps << ' ' << t;
      EXPECT_NEAR(c.p, oracle[1], 1e-9 * (1 + t)) << eps << ' ' << t;
    }
  }
  const PhasePoint period = forced_classical_solution(2 * kPi, 0.5);
  EXPECT_NEAR(period.x, 2 * kPi * 0.5, 1e-14);
  EXPECT_NEAR(period.p, 0.0, 1e-14);
}

TEST(ClassicalSolutionTest, ActionPhaseMatchesNestedQuadrature) {
  // β(t) = −i√2ε ∫₀ᵗ sin s e^{is} ds and φ̇ = −Im(conj(β̇)β), both by Simpson.
  const double eps = 0.5;
  auto beta_dot = [&](double s) {
    return -1i * std::sqrt(2.0) * eps * std::sin(s) * std::exp(1i * s);
  };
  auto beta = [&](double t) {
    const double re = testing::simpson(
        [&](double s) { return beta_dot(s).real(); }, 0.0, t, 1200);
    const double im = testing::simpson(
        [&](double s) { return beta_dot(s).imag(); }, 0.0, t, 1200);
    return std::complex<double>(re, im);
  };
  for (double t : {1.0, 2 * kPi, 9.5}) {
    const double phi = testing::simpson(
        [&](double s) { return -std::imag(std::conj(beta_dot(s)) * beta(s)); },
        0.0, t, 1200);
    EXPECT_NEAR(forced_action_phase(t, eps), phi, 1e-8) << t;
  }
}

TEST(StepTest, GroundStateIsStationaryWithoutForcing) {
  const SimParams p = make_params(0.0, 0.0, "zero");
  const HermiteBasis basis = build_hermite_basis(p.grid(), 32);
  const WaveFunction psi0 = ground(basis);
  for (double dt : {0.01, 0.3, 1.5}) {
    const WaveFunction psi = step(psi0, 0.0, dt, p);
    const std::complex<double> overlap = inner_product(psi0, psi);
    EXPECT_NEAR(std::abs(overlap), 1.0, 1e-10) << dt;
    // (H₀ + ½)ψ₀ = ½ψ₀.
    EXPECT_NEAR(std::abs(overlap - std::polar(1.0, -0.5 * dt)), 0.0, 1e-10);
  }
}

TEST(StepTest, NormDriftOverManySteps) {
  const SimParams p = make_params(0.3, 0.1, "cosine", 1024);
  const HermiteBasis basis = build_hermite_basis(p.grid(), 32);
  const SplitStepPropagator prop(p);
  Eigen::VectorXcd samples = ground(basis).coefficients();
  const double before = samples.norm();
  for (int i = 0; i < 10000; ++i) prop.step_in_place(samples, i * p.dt(), p.dt());
  EXPECT_LT(std::abs(samples.norm() / before - 1.0), 1e-9);
}

TEST(StepTest, Preconditions) {
  const SimParams p = make_params(0.3, 0.0, "zero");
  const HermiteBasis basis = build_hermite_basis(p.grid(), 32);
  const WaveFunction psi0 = ground(basis);
  const WaveFunction doubled = psi0.with_coefficients(2.0 * psi0.coefficients());
  EXPECT_THROW(step(doubled, 0.0, 0.01, p), PreconditionError);
  EXPECT_THROW(step(to_hermite(psi0, basis), 0.0, 0.01, p), PreconditionError);
  EXPECT_THROW(step(psi0, 0.0, 4.0, p), PreconditionError);
}

TEST(ExactPropagatorTest, IdentityAtTimeZero) {
  const HermiteBasis basis = build_hermite_basis(make_grid(512, 20.0), 32);
  auto rng = testing::seeded_rng(3);
  std::normal_distribution<double> normal;
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(32);
  for (int k = 0; k < 8; ++k) c[k] = {normal(rng), normal(rng)};
  const WaveFunction h = WaveFunction::in_hermite(c).normalized();
  const WaveFunction out = exact_mu0_propagate(h, 0.0, 0.5, basis);
  EXPECT_LT(distance(out, to_grid(h, basis)), 1e-12);
}

TEST(ExactPropagatorTest, CoherentEnergyAfterOnePeriod) {
  const double eps = 0.5;
  const HermiteBasis basis = build_hermite_basis(make_grid(512, 20.0), 32);
  const WaveFunction h0 = to_hermite(ground(basis), basis);
  const WaveFunction out = exact_mu0_propagate(h0, 2 * kPi, eps, basis);
  const auto oracle = testing::forced_oscillator_rk4(eps, 2 * kPi, 100000);
  const double expected = 0.5 * (oracle[0] * oracle[0] + oracle[1] * oracle[1]);
  EXPECT_NEAR(harmonic_energy(out, basis.grid()), expected, 1e-9);

  const SimParams p = make_params(eps, 0.0, "zero", 8192);
  const WaveFunction split = evolve(ground(basis), 0.0, 2 * kPi, p);
  EXPECT_NEAR(harmonic_energy(split, basis.grid()), expected, 1e-6);
}

TEST(ExactPropagatorTest, SplitStepAgreesOverOnePeriod) {
  const SimParams p = make_params(0.5, 0.0, "zero", 8192);
  const HermiteBasis basis = build_hermite_basis(p.grid(), 32);
  const WaveFunction psi0 = ground(basis);
  const WaveFunction split = evolve(psi0, 0.0, 2 * kPi, p);
  const WaveFunction exact =
      exact_mu0_propagate(to_hermite(psi0, basis), 2 * kPi, 0.5, basis);
  EXPECT_LT(distance(split, exact), 1e-6);
}

TEST(ExactPropagatorTest, SplitStepAgreesAtFractionalTimeForSuperposition) {
  const SimParams p = make_params(0.7, 0.0, "zero", 4096, 512, 20.0);
  const HermiteBasis basis = build_hermite_basis(p.grid(), 32);
  auto rng = testing::seeded_rng(11);
  std::normal_distribution<double> normal;
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(32);
  for (int k = 0; k < 6; ++k) c[k] = {normal(rng), normal(rng)};
  const WaveFunction h = WaveFunction::in_hermite(c).normalized();
  const double t = 2.7;
  const WaveFunction split = evolve(to_grid(h, basis), 0.0, t, p);
  const WaveFunction exact = exact_mu0_propagate(h, t, 0.7, basis);
  EXPECT_LT(distance(split, exact), 1e-6);
}

TEST(ExactPropagatorTest, StrangOrderTwoConvergence) {
  const HermiteBasis basis = build_hermite_basis(make_grid(512, 20.0), 32);
  const WaveFunction psi0 = ground(basis);
  const WaveFunction exact =
      exact_mu0_propagate(to_hermite(psi0, basis), 2 * kPi, 0.5, basis);
  double previous = 0.0;
  for (int steps : {256, 512, 1024}) {
    const SimParams p = make_params(0.5, 0.0, "zero", steps);
    const double err = distance(evolve(psi0, 0.0, 2 * kPi, p), exact);
    if (previous > 0.0) {
      EXPECT_GT(previous / err, 3.6);
      EXPECT_LT(previous / err, 4.4);
    }
    previous = err;
  }
}

TEST(EvolveTest, FreePeriodIsIdentityUpToGlobalPhase) {
  const SimParams p = make_params(0.0, 0.0, "zero", 512);
  const HermiteBasis basis = build_hermite_basis(p.grid(), 32);
  auto rng = testing::seeded_rng(5);
  std::normal_distribution<double> normal;
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(32);
  for (int k = 0; k < 10; ++k) c[k] = {normal(rng), normal(rng)};
  const WaveFunction psi0 = to_grid(WaveFunction::in_hermite(c).normalized(), basis);
  const WaveFunction psi = evolve(psi0, 0.0, 2 * kPi, p);
  // e^{−2πi(H₀+½)} = −1 on every Hermite mode.
  EXPECT_NEAR(std::abs(inner_product(psi0, psi) + 1.0), 0.0, 1e-10);
}

TEST(EvolveTest, ReverseEvolutionRestoresState) {
  const SimParams p = make_params(0.3, 0.1, "cosine", 1024);
  const HermiteBasis basis = build_hermite_basis(p.grid(), 32);
  const WaveFunction psi0 = ground(basis);
  const WaveFunction forward = evolve(psi0, 0.0, 2 * kPi, p);
  EXPECT_NEAR(forward.norm(), 1.0, 1e-9);
  const WaveFunction back = evolve(forward, 2 * kPi, 0.0, p);
  EXPECT_LT(distance(back, psi0), 1e-8);
}

TEST(EvolveTest, TimeOrderingComposes) {
  const SimParams p = make_params(0.5, 0.2, "modulated_cosine", 1024);
  const HermiteBasis basis = build_hermite_basis(p.grid(), 32);
  const WaveFunction psi0 = ground(basis);
  const WaveFunction whole = evolve(psi0, 0.0, 2 * kPi, p);
  const WaveFunction halves =
      evolve(evolve(psi0, 0.0, kPi, p), kPi, 2 * kPi, p);
  EXPECT_LT(distance(whole, halves), 1e-10);
}

TEST(EvolveTest, SelfConvergenceWithPerturbation) {
  // Second order also holds with μV switched on (reference at dt/8).
  const HermiteBasis basis = build_hermite_basis(make_grid(512, 20.0), 32);
  const WaveFunction psi0 = ground(basis);
  const auto run = [&](int steps) {
    return evolve(psi0, 0.0, 2 * kPi, make_params(0.5, 0.3, "cosine", steps));
  };
  const WaveFunction reference = run(4096);
  const double coarse = distance(run(256), reference);
  const double fine = distance(run(512), reference);
  EXPECT_GT(coarse / fine, 3.5);
  EXPECT_LT(coarse / fine, 4.5);
}

TEST(HarmonicEnergyTest, HermiteModesHaveIntegerEnergy) {
  const HermiteBasis basis = build_hermite_basis(make_grid(512, 20.0), 32);
  for (int k : {0, 1, 5, 20}) {
    EXPECT_NEAR(harmonic_energy(hermite_state_on_grid(basis, k), basis.grid()),
                k, 1e-9);
  }
}

TEST(BoundaryMassTest, DetectsStatesAtTheEdge) {
  const Grid g = make_grid(512, 20.0);
  Eigen::VectorXcd centered(512), edge(512);
  for (int j = 0; j < 512; ++j) {
    centered[j] = testing::gaussian_packet(g.nodes()[j], 0.0, 0.0, 1.0);
    edge[j] = testing::gaussian_packet(g.nodes()[j], 19.5, 0.0, 1.0);
  }
  EXPECT_LT(boundary_mass(centered, g, 0.05), 1e-12);
  EXPECT_GT(boundary_mass(edge, g, 0.05), 0.1);
}

TEST(SimParamsTest, RecordsThresholdMargin) {
  const SimParams p = make_params(0.5, 0.2, "cosine");
  EXPECT_TRUE(p.threshold().satisfied);
  EXPECT_NEAR(p.threshold().margin, 0.3, 1e-15);
  EXPECT_NEAR(p.dt() * p.steps_per_period(), 2 * kPi, 1e-15);
  const SimParams free = make_params(0.0, 0.2, "cosine");
  EXPECT_FALSE(free.threshold().satisfied);
  EXPECT_THROW(make_params(-0.1, 0.0, "zero"), PreconditionError);
  EXPECT_THROW(make_params(0.1, 0.0, "zero", 2), PreconditionError);
}

TEST(StepPlanTest, UsesNominalStepWhenItDivides) {
  const StepPlan a = plan_steps(2 * kPi, 2 * kPi / 64);
  EXPECT_EQ(a.count, 64);
  EXPECT_DOUBLE_EQ(a.size, 2 * kPi / 64);
  const StepPlan b = plan_steps(-kPi, 2 * kPi / 64);
  EXPECT_EQ(b.count, 32);
  EXPECT_DOUBLE_EQ(b.size, -2 * kPi / 64);
  const StepPlan c = plan_steps(1.0, 0.3);
  EXPECT_EQ(c.count, 4);
  EXPECT_DOUBLE_EQ(c.size, 0.25);
}

}  // namespace
}  // namespace floquet
