#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace floquet {

/// Real scalar field V(t, x₁), 2π-periodic in t.
using TimeDependentField = std::function<double(double t, double x)>;

/// A perturbation with bounded x-derivatives and analytically known bounds.
///
/// The bounds are never estimated numerically: sampling can only
/// under-estimate a supremum, and the threshold decision depends on them.
struct PotentialSpec {
  std::string name;
  TimeDependentField eval;
  TimeDependentField grad_x1;
  TimeDependentField hess_x1;
  double sup_grad_x1 = 0.0;  // sup_{t,x} |∂₁V|
  double sup_hess_x1 = 0.0;  // sup_{t,x} |∂₁²V|
};

/// One of: zero, cosine, smooth_linear, modulated_cosine.
PotentialSpec builtin_potential(std::string_view name);
std::vector<std::string> builtin_potential_names();

/// User potential; the caller supplies the derivative bounds.
PotentialSpec custom_potential(std::string name, TimeDependentField eval,
                               TimeDependentField grad_x1,
                               TimeDependentField hess_x1, double sup_grad_x1,
                               double sup_hess_x1);

struct ThresholdCheck {
  bool satisfied = false;
  /// ε − |μ|·sup|∂₁V|; the guaranteed commutator floor when positive.
  double margin = 0.0;
};

/// |μ|·sup|∂₁V| < ε. Throws PreconditionError for ε ≤ 0.
ThresholdCheck check_threshold(double eps, double mu, const PotentialSpec& spec);

}  // namespace floquet
