#pragma once

namespace floquet {

/// Every numerical threshold used by the library, in one place.
struct Tolerances {
  double orthonormality = 1e-10;   // Hermite Gram matrix defect
  double hermiticity = 1e-12;      // ‖M − M†‖_max for flagged matrices
  double propagation = 1e-6;       // propagated-state comparisons
  double normalization = 1e-8;     // |‖ψ‖ − 1| accepted by the stepper
  double polar_threshold = 1e-8;   // compressed Floquet defect that triggers polar projection
  double unitarity_abort = 1e-4;   // propagation defect that aborts a Floquet build
  double frame_equivalence = 1e-5; // lab frame vs reduced frame discrepancy
  double mourre_slack = 0.02;      // allowed dip of the commutator below the analytic floor
  double double_commutator_slack = 0.02;
  double boundary_fraction = 0.05; // outer fraction of x and k bands treated as "boundary"
};

}  // namespace floquet
