#pragma once

#include <cmath>

namespace qmix {

// Numerical thresholds shared by every module. All values are absolute unless
// the field name says otherwise.
struct Tolerances {
  // Eigenvalues closer than group_rel * max(1, spectral radius) are merged.
  double group_rel = 1e-8;
  // Algebraic identity checks use alg_per_n * n.
  double alg_per_n = 1e-9;
  // ||E_lambda x|| above this puts lambda in the eigenvalue support of x.
  double supp = 1e-8;
  // Integer / quadratic-surd recognition of eigenvalues.
  double recog = 1e-6;
  // A refined minimum below this deviation counts as a detection.
  double detect = 1e-8;
  // Residual threshold for target-state feasibility equations.
  double feas = 1e-6;
  // Floating eigenvector inequalities get safe_per_sqrt_n * sqrt(n) of slack.
  double safe_per_sqrt_n = 1e-6;
  // Entry tolerance when classifying sqrt(n) U(t) as a Hadamard matrix.
  double hadamard = 1e-6;

  int butson_max_order = 24;
  int surd_max_discriminant = 10000;
  int surd_max_offset = 1000;

  double alg(int n) const { return alg_per_n * n; }
  double safe_margin(int n) const { return safe_per_sqrt_n * std::sqrt(static_cast<double>(n)); }
};

}  // namespace qmix
