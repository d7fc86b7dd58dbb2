#include "dplap/fundsol.hpp"

#include <cmath>
#include <limits>

#include "dplap/errors.hpp"

namespace dplap {

namespace {
void check_radius(double r, const char* who) {
  if (!(r > 0.0) || !std::isfinite(r))
    throw std::domain_error(std::string(who) + ": radius must be positive and finite, got " +
                            std::to_string(r));
}
}  // namespace

double W(const RadialFundamental& rf, double r) {
  check_radius(r, "W");
  if (rf.p.is_infinite() || rf.n == 1) return -r;
  if (rf.log_branch()) return -std::log(r);
  const double p = rf.p.value();
  const double alpha = (p - rf.n) / (p - 1.0);  // nonzero off the log branch
  return -std::pow(r, alpha) / alpha;
}

double W_prime(const RadialFundamental& rf, double r) {
  check_radius(r, "W_prime");
  if (rf.p.is_infinite()) return -1.0;
  if (rf.n == 1) return -1.0;
  return -std::pow(r, (1.0 - rf.n) / (rf.p.value() - 1.0));
}

double W_second(const RadialFundamental& rf, double r) {
  check_radius(r, "W_second");
  if (rf.p.is_infinite() || rf.n == 1) return 0.0;
  return -W_prime(rf, r) * ((rf.n - 1.0) / (rf.p.value() - 1.0)) / r;
}

double W_at_origin(const RadialFundamental& rf) {
  if (rf.p.is_infinite() || rf.n == 1) return 0.0;
  if (rf.log_branch() || rf.p.value() < rf.n) return std::numeric_limits<double>::infinity();
  return 0.0;
}

double W_inverse(const RadialFundamental& rf, double w) {
  if (!std::isfinite(w)) throw std::domain_error("W_inverse: non-finite level");
  if (rf.p.is_infinite() || rf.n == 1) {
    if (!(w < 0.0)) throw std::domain_error("W_inverse: level outside range of W");
    return -w;
  }
  if (rf.log_branch()) return std::exp(-w);
  const double p = rf.p.value();
  const double alpha = (p - rf.n) / (p - 1.0);
  const double x = -alpha * w;  // r^alpha; must be positive
  if (!(x > 0.0)) throw std::domain_error("W_inverse: level outside range of W");
  return std::pow(x, 1.0 / alpha);
}

CylFundamental::CylFundamental(int k_, Mat q_, Point x0_, double c1_, double c2_)
    : k(k_), q(std::move(q_)), x0(std::move(x0_)), c1(c1_), c2(c2_) {
  const int n = x0.size();
  if (n < 1) throw std::invalid_argument("CylFundamental: empty axis point");
  if (k < 1 || k > n)
    throw std::invalid_argument("CylFundamental: k must lie in [1, n]");
  if (q.rows() != n || q.cols() != k)
    throw std::invalid_argument("CylFundamental: Q must be n x k");
  if (q.orthonormality_defect() > 1e-12)
    throw std::invalid_argument("CylFundamental: Q columns are not orthonormal");
  if (!std::isfinite(c1) || c1 < 0.0)
    throw std::invalid_argument("CylFundamental: c1 must be finite and >= 0");
  if (!std::isfinite(c2)) throw std::invalid_argument("CylFundamental: c2 must be finite");
}

Jet2 cyl_jet(const CylFundamental& cf, const Point& x, const PValue& p) {
  const int n = cf.ambient_dim();
  if (x.size() != n) throw std::invalid_argument("cyl_jet: point dimension mismatch");
  if (cf.c1 == 0.0) return Jet2(cf.c2, Vec(n), SymMatrix(n));

  const Vec y = cf.q.transposed() * (x - cf.x0);
  const double r = y.norm();
  if (r == 0.0) throw SingularityError("cyl_jet: point lies on the singular axis");

  const RadialFundamental rf(cf.k, p);
  const double u = cf.c1 * W(rf, r) + cf.c2;
  const double du = cf.c1 * W_prime(rf, r);
  const double d2u = cf.c1 * W_second(rf, r);

  const Vec yhat = y * (1.0 / r);
  const Vec grad = cf.q * (du * yhat);

  // k x k block W'' yy^T/r^2 + (W'/r)(I - yy^T/r^2), then pushed to ambient
  // coordinates through Q.
  const double tang = du / r;
  SymMatrix block(cf.k);
  for (int i = 0; i < cf.k; ++i)
    for (int j = i; j < cf.k; ++j)
      block.set(i, j, (d2u - tang) * yhat[i] * yhat[j] + (i == j ? tang : 0.0));

  return Jet2(u, grad, conjugated(cf.q, block));
}

bool jet_gradient_is_top_eigenvector(const Jet2& j, double tol) {
  const double g = j.gradient.norm();
  if (g == 0.0)
    throw std::domain_error("jet_gradient_is_top_eigenvector: gradient vanishes");
  const auto [lmax, xi] = largest_eig(j.hessian);
  const Vec ghat = j.gradient * (1.0 / g);
  const Vec resid = j.hessian * ghat - lmax * ghat;
  const double scale = 1.0 + j.hessian.frobenius();
  const bool residual_ok = resid.norm() <= tol * scale;
  const bool quotient_ok = std::abs(rayleigh(j.hessian, j.gradient) - lmax) <= tol;
  return residual_ok && quotient_ok;
}

bool gradient_is_top_eigenvector(const CylFundamental& cf, const Point& x, const PValue& p,
                                 double tol) {
  return jet_gradient_is_top_eigenvector(cyl_jet(cf, x, p), tol);
}

}  // namespace dplap
