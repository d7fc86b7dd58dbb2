#pragma once

#include <optional>

#include "dplap/jet.hpp"
#include "dplap/linalg.hpp"
#include "dplap/pvalue.hpp"

namespace dplap {

// Pointwise second-order operators evaluated on jets. All of them are
// defined for 2 <= p < inf and for p = inf; PValue keeps the two regimes
// apart. "Degenerate" cases follow the classical conventions: the
// unnormalized p-Laplacian of a critical point is 0 for p > 2, and the
// normalized one is undefined there.

// |grad u|^(p-2) ( (p-2) <grad, H grad>/|grad|^2 + tr H ) for finite p;
// <grad, H grad> at p = inf. Returns 0 at critical points when p > 2.
double p_laplacian(const Jet2& j, const PValue& p);

// The bracket alone: (p-2) rayleigh(H, grad) + tr H, or rayleigh(H, grad)
// at inf. Throws std::domain_error when the gradient vanishes.
double normalized_p_laplacian(const Jet2& j, const PValue& p);

// (p-2) lambda_max(H) + tr H for finite p, lambda_max(H) at inf.
double dominative(const Jet2& j, const PValue& p);

// Closed form of dominative() in two dimensions, eigensolver-free:
//   p/2 (h11+h22) + (p-2)/2 sqrt((h11-h22)^2 + 4 h12^2)   (finite p)
//   1/2 (h11+h22) + 1/2 sqrt(...)                          (p = inf)
double dominative_2d(const Jet2& j, const PValue& p);

// (p-2) lambda_min(H) + tr H for finite p, lambda_min(H) at inf.
// Mirror image of dominative(): submissive(j) = -dominative(-j).
double submissive(const Jet2& j, const PValue& p);

// The matrix symbol F_p(X) = (p-2) lambda_max(X) + tr X (lambda_max at
// inf). dominative() is exactly F_p of the Hessian.
double matrix_symbol_Fp(const SymMatrix& x, const PValue& p);

// dominative() specialized to a k-cylindrical radial profile at radius
// r > 0 in ambient dimension n: the Hessian eigenvalues are U'(r)/r with
// multiplicity k-1, 0 with multiplicity n-k, and U''(r) once, so
//   F_p = (p-2) max{candidates} + U'' + (k-1) U'/r.
double dominative_profile(double du, double d2u, double r, int k, int n, const PValue& p);

// Residual of the radial form of the p-Laplace equation for a
// k-cylindrical profile: (p-1) U'' + (k-1) U'/r for finite p, U'' at inf.
// Zero exactly when U'(r) = C r^(-(k-1)/(p-1)).
double radial_plaplace_profile(double du, double d2u, double r, int k, const PValue& p);

// All pointwise quantities of one jet, for reports and CSV sampling.
// normalized_p is empty at critical points.
struct OperatorReport {
  double p_laplace = 0.0;
  std::optional<double> normalized_p;
  double dominative = 0.0;
  double lambda_max = 0.0;
  double trace = 0.0;
};

OperatorReport evaluate_operators(const Jet2& j, const PValue& p);

}  // namespace dplap
