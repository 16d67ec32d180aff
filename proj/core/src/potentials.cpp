#include "floquet/potentials.hpp"

#include <cmath>
#include <sstream>

#include "floquet/error.hpp"

namespace floquet {

PotentialSpec builtin_potential(std::string_view name) {
  if (name == "zero") {
    auto zero = [](double, double) { return 0.0; };
    return {"zero", zero, zero, zero, 0.0, 0.0};
  }
  if (name == "cosine") {
    return {"cosine",
            [](double, double x) { return std::cos(x); },
            [](double, double x) { return -std::sin(x); },
            [](double, double x) { return -std::cos(x); },
            1.0, 1.0};
  }
  if (name == "smooth_linear") {
    // |V'| = |x|/√(1+x²) → 1 as |x| → ∞; |V''| = (1+x²)^{-3/2} ≤ 1 at x = 0.
    return {"smooth_linear",
            [](double, double x) { return std::sqrt(1.0 + x * x); },
            [](double, double x) { return x / std::sqrt(1.0 + x * x); },
            [](double, double x) { return std::pow(1.0 + x * x, -1.5); },
            1.0, 1.0};
  }
  if (name == "modulated_cosine") {
    return {"modulated_cosine",
            [](double t, double x) { return std::sin(t) * std::cos(x); },
            [](double t, double x) { return -std::sin(t) * std::sin(x); },
            [](double t, double x) { return -std::sin(t) * std::cos(x); },
            1.0, 1.0};
  }
  std::ostringstream msg;
  msg << "unknown potential '" << name << "' (expected one of:";
  for (const auto& known : builtin_potential_names()) msg << ' ' << known;
  msg << ')';
  throw PreconditionError(msg.str());
}

std::vector<std::string> builtin_potential_names() {
  return {"zero", "cosine", "smooth_linear", "modulated_cosine"};
}

PotentialSpec custom_potential(std::string name, TimeDependentField eval,
                               TimeDependentField grad_x1,
                               TimeDependentField hess_x1, double sup_grad_x1,
                               double sup_hess_x1) {
  if (!eval || !grad_x1 || !hess_x1) {
    throw PreconditionError("custom potential needs value and derivatives");
  }
  if (!(sup_grad_x1 >= 0.0) || !(sup_hess_x1 >= 0.0) ||
      !std::isfinite(sup_grad_x1) || !std::isfinite(sup_hess_x1)) {
    throw PreconditionError(
        "custom potential bounds must be finite and non-negative");
  }
  return {std::move(name), std::move(eval), std::move(grad_x1),
          std::move(hess_x1), sup_grad_x1, sup_hess_x1};
}

ThresholdCheck check_threshold(double eps, double mu,
                               const PotentialSpec& spec) {
  if (!(eps > 0.0)) {
    throw PreconditionError("threshold check needs eps > 0");
  }
  const double margin = eps - std::abs(mu) * spec.sup_grad_x1;
  return {margin > 0.0, margin};
}

}  // namespace floquet
