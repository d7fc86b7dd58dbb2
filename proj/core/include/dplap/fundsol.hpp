#pragma once

#include "dplap/jet.hpp"
#include "dplap/linalg.hpp"
#include "dplap/pvalue.hpp"

namespace dplap {

// Radial profile W of the rotationally symmetric p-harmonic function in
// dimension n, normalized so that W'(r) = -r^((1-n)/(p-1)) for finite p
// and W'(r) = -1 at p = infinity. W is strictly decreasing on (0, inf).
struct RadialFundamental {
  int n;
  PValue p;

  RadialFundamental(int n_, PValue p_) : n(n_), p(std::move(p_)) {
    if (n < 1 || n > kMaxDim)
      throw std::invalid_argument("RadialFundamental: dimension outside [1, 16]");
  }

  // True when the logarithmic branch applies. p is stored as a double, so
  // the comparison is |p - n| < 1e-12 rather than an exact rational test.
  bool log_branch() const {
    return !p.is_infinite() && std::abs(p.value() - static_cast<double>(n)) < 1e-12;
  }
};

// W(r), r > 0. Branches: -r for p = inf or n = 1, -log r when p = n,
// otherwise -(p-1)/(p-n) * r^((p-n)/(p-1)).
double W(const RadialFundamental& rf, double r);

// W'(r) = -r^((1-n)/(p-1)) for finite p (all branches agree), -1 at inf.
double W_prime(const RadialFundamental& rf, double r);

// W''(r) = (n-1)/(p-1) * r^((2-p-n)/(p-1)) >= 0 for finite p, 0 at inf.
// Computed from W'(r) so that (p-1)W'' + (n-1)W'/r cancels exactly.
double W_second(const RadialFundamental& rf, double r);

// Limit of W as r -> 0+: +inf when p <= n, 0 when p > n or p = inf.
double W_at_origin(const RadialFundamental& rf);

// The radius with W(r) = w; throws std::domain_error when w is outside
// the range of W. Used to place truncation kinks.
double W_inverse(const RadialFundamental& rf, double w);

// A k-cylindrical translate u(x) = c1 * W_{k,p}(|Q^T (x - x0)|) + c2,
// constant along the (n-k)-dimensional axis x0 + ker(Q^T).
// Q has orthonormal columns; c1 >= 0 (c1 = 0 is the constant field c2,
// smooth everywhere, including on the axis).
struct CylFundamental {
  int k;
  Mat q;     // n x k, orthonormal columns
  Point x0;  // a point on the axis
  double c1;
  double c2;

  CylFundamental(int k_, Mat q_, Point x0_, double c1_, double c2_ = 0.0);

  // Radial special case k = n, Q = I.
  static CylFundamental radial(const Point& center, double c1, double c2 = 0.0) {
    const int n = center.size();
    return CylFundamental(n, Mat::identity(n), center, c1, c2);
  }

  int ambient_dim() const { return x0.size(); }
};

// Exact jet of the cylindrical field at x. Off the axis the Hessian is
//   Q { W'' yy^T/|y|^2 + (W'/|y|)(I_k - yy^T/|y|^2) } Q^T,  y = Q^T(x - x0),
// scaled by c1. Throws SingularityError on the axis (unless c1 = 0).
Jet2 cyl_jet(const CylFundamental& cf, const Point& x, const PValue& p);

// Whether the gradient of the jet is an eigenvector for the largest
// Hessian eigenvalue: checks ||H g - lambda_max g|| <= tol (1+||H||_F) |g|
// and |rayleigh(H, g) - lambda_max| <= tol. Throws std::domain_error when
// the gradient vanishes.
bool jet_gradient_is_top_eigenvector(const Jet2& j, double tol = 1e-8);

// The same check on a cylindrical field at a specific point.
bool gradient_is_top_eigenvector(const CylFundamental& cf, const Point& x, const PValue& p,
                                 double tol = 1e-8);

}  // namespace dplap
