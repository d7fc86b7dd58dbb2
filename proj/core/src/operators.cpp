#include "dplap/operators.hpp"

#include <algorithm>
#include <cmath>

namespace dplap {

double p_laplacian(const Jet2& j, const PValue& p) {
  if (p.is_infinite()) return j.hessian.quad(j.gradient);
  const double pv = p.value();
  const double tr = j.hessian.trace();
  if (pv == 2.0) return tr;
  const double g = j.gradient.norm();
  if (g == 0.0) return 0.0;
  // Normalize before forming the quadratic form; the |grad|^(p-2) factor
  // is applied once at the end. This keeps the bracket at Hessian scale,
  // which matters when the prefactor is large.
  const Vec ghat = j.gradient * (1.0 / g);
  return std::pow(g, pv - 2.0) * ((pv - 2.0) * j.hessian.quad(ghat) + tr);
}

double normalized_p_laplacian(const Jet2& j, const PValue& p) {
  const double g = j.gradient.norm();
  if (g == 0.0)
    throw std::domain_error("normalized_p_laplacian: undefined at a critical point");
  const Vec ghat = j.gradient * (1.0 / g);
  const double q = j.hessian.quad(ghat);
  if (p.is_infinite()) return q;
  return (p.value() - 2.0) * q + j.hessian.trace();
}

double matrix_symbol_Fp(const SymMatrix& x, const PValue& p) {
  const double lmax = largest_eig(x).first;
  if (p.is_infinite()) return lmax;
  return (p.value() - 2.0) * lmax + x.trace();
}

double dominative(const Jet2& j, const PValue& p) { return matrix_symbol_Fp(j.hessian, p); }

double dominative_2d(const Jet2& j, const PValue& p) {
  if (j.dim() != 2) throw std::invalid_argument("dominative_2d: jet is not two-dimensional");
  const double a = j.hessian(0, 0), d = j.hessian(1, 1), b = j.hessian(0, 1);
  const double disc = std::sqrt((a - d) * (a - d) + 4.0 * b * b);
  if (p.is_infinite()) return 0.5 * (a + d) + 0.5 * disc;
  const double pv = p.value();
  return 0.5 * pv * (a + d) + 0.5 * (pv - 2.0) * disc;
}

double submissive(const Jet2& j, const PValue& p) {
  const double lmin = jacobi_eigen(j.hessian).min();
  if (p.is_infinite()) return lmin;
  return (p.value() - 2.0) * lmin + j.hessian.trace();
}

double dominative_profile(double du, double d2u, double r, int k, int n, const PValue& p) {
  if (!(r > 0.0)) throw std::domain_error("dominative_profile: radius must be positive");
  if (k < 1 || n < 1 || k > n)
    throw std::invalid_argument("dominative_profile: need 1 <= k <= n");
  double lmax = d2u;                              // always an eigenvalue
  if (k >= 2) lmax = std::max(lmax, du / r);      // multiplicity k-1
  if (k < n) lmax = std::max(lmax, 0.0);          // multiplicity n-k
  const double tr = d2u + (k - 1) * (du / r);
  if (p.is_infinite()) return lmax;
  return (p.value() - 2.0) * lmax + tr;
}

double radial_plaplace_profile(double du, double d2u, double r, int k, const PValue& p) {
  if (!(r > 0.0)) throw std::domain_error("radial_plaplace_profile: radius must be positive");
  if (k < 1) throw std::invalid_argument("radial_plaplace_profile: need k >= 1");
  if (p.is_infinite()) return d2u;
  return (p.value() - 1.0) * d2u + (k - 1) * (du / r);
}

OperatorReport evaluate_operators(const Jet2& j, const PValue& p) {
  OperatorReport rep;
  rep.p_laplace = p_laplacian(j, p);
  if (j.gradient.norm() > 0.0) rep.normalized_p = normalized_p_laplacian(j, p);
  rep.lambda_max = largest_eig(j.hessian).first;
  rep.trace = j.hessian.trace();
  rep.dominative = p.is_infinite() ? rep.lambda_max
                                   : (p.value() - 2.0) * rep.lambda_max + rep.trace;
  return rep;
}

}  // namespace dplap
