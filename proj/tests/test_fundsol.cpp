#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "dplap/errors.hpp"
#include "dplap/fundsol.hpp"
#include "dplap/operators.hpp"
#include "dplap/rng.hpp"

using namespace dplap;

TEST_CASE("W branch values") {
  // log branch (p = n)
  const RadialFundamental log22(2, PValue::finite(2.0));
  CHECK(W(log22, 1.0) == 0.0);
  CHECK(W(log22, std::exp(1.0)) == doctest::Approx(-1.0));
  CHECK(W_prime(log22, 2.0) == doctest::Approx(-0.5));
  CHECK(W_second(log22, 2.0) == doctest::Approx(0.25));

  // p < n: Newtonian-type, positive with a pole at 0
  const RadialFundamental newt(3, PValue::finite(2.0));
  CHECK(W(newt, 2.0) == doctest::Approx(0.5));
  CHECK(W_prime(newt, 2.0) == doctest::Approx(-0.25));
  CHECK(W_second(newt, 2.0) == doctest::Approx(0.25));

  // p > n: bounded near 0, -(1/a) r^a with a = 2/3 here
  const RadialFundamental b24(2, PValue::finite(4.0));
  CHECK(W(b24, 1.0) == doctest::Approx(-1.5));
  CHECK(W_prime(b24, 8.0) == doctest::Approx(-0.5));

  // p = infinity: the cone
  const RadialFundamental cone(3, PValue::infinity());
  CHECK(W(cone, 2.5) == -2.5);
  CHECK(W_prime(cone, 0.3) == -1.0);
  CHECK(W_second(cone, 0.3) == 0.0);

  // n = 1 collapses to the cone as well
  const RadialFundamental line(1, PValue::finite(7.0));
  CHECK(W(line, 2.0) == -2.0);
  CHECK(W_prime(line, 2.0) == -1.0);

  CHECK_THROWS_AS(W(log22, 0.0), std::domain_error);
  CHECK_THROWS_AS(W(log22, -1.0), std::domain_error);
}

TEST_CASE("W_prime follows the single power law for every finite p") {
  for (int n : {2, 3, 5})
    for (double p : {2.0, 3.0, 4.0, 10.0}) {
      const RadialFundamental rf(n, PValue::finite(p));
      for (double r : {0.1, 0.7, 1.0, 3.0, 10.0})
        CHECK(W_prime(rf, r) ==
              doctest::Approx(-std::pow(r, (1.0 - n) / (p - 1.0))).epsilon(1e-15));
    }
}

TEST_CASE("the radial operator annihilates W to roundoff") {
  // (p-1) W'' + (n-1) W'/r, with W'' derived from W', cancels to a few ulps.
  // This cancellation is what the 1e-9 sampling tolerances lean on.
  std::vector<PValue> ps = {PValue::finite(2.0), PValue::finite(3.0), PValue::finite(4.0),
                            PValue::finite(10.0), PValue::infinity()};
  for (int n : {1, 2, 3, 5, 16})
    for (const PValue& p : ps) {
      const RadialFundamental rf(n, p);
      for (int i = 0; i <= 40; ++i) {
        const double r = 0.1 * std::pow(100.0, i / 40.0);  // 0.1 .. 10
        const double du = W_prime(rf, r);
        const double d2u = W_second(rf, r);
        const double residual = radial_plaplace_profile(du, d2u, r, n, p);
        const double scale = 1.0 + std::abs(du) * (n - 1.0) / r;
        CHECK(std::abs(residual) <= 1e-13 * scale);
      }
    }
}

TEST_CASE("W_inverse round trips on every branch") {
  std::vector<RadialFundamental> rfs = {
      RadialFundamental(2, PValue::finite(2.0)),   // log
      RadialFundamental(3, PValue::finite(2.0)),   // p < n
      RadialFundamental(2, PValue::finite(4.0)),   // p > n
      RadialFundamental(3, PValue::infinity()),    // cone
      RadialFundamental(1, PValue::finite(3.0)),   // n = 1
  };
  for (const auto& rf : rfs)
    for (double r : {0.05, 0.5, 1.0, 2.0, 20.0})
      CHECK(W_inverse(rf, W(rf, r)) == doctest::Approx(r).epsilon(1e-12));

  // levels outside the range must be rejected, not extrapolated
  CHECK_THROWS_AS(W_inverse(RadialFundamental(3, PValue::infinity()), 1.0), std::domain_error);
  CHECK_THROWS_AS(W_inverse(RadialFundamental(2, PValue::finite(4.0)), 1.0), std::domain_error);
  CHECK_THROWS_AS(W_inverse(RadialFundamental(3, PValue::finite(2.0)), -1.0), std::domain_error);
}

TEST_CASE("W at the origin") {
  CHECK(W_at_origin(RadialFundamental(2, PValue::finite(4.0))) == 0.0);
  CHECK(W_at_origin(RadialFundamental(3, PValue::infinity())) == 0.0);
  CHECK(W_at_origin(RadialFundamental(1, PValue::finite(2.0))) == 0.0);
  CHECK(std::isinf(W_at_origin(RadialFundamental(2, PValue::finite(2.0)))));
  CHECK(std::isinf(W_at_origin(RadialFundamental(5, PValue::finite(3.0)))));
}

TEST_CASE("cylindrical field construction guards") {
  const Point origin3(3);
  CHECK_THROWS_AS(CylFundamental(0, Mat::identity(3), origin3, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(CylFundamental(4, Mat::identity(3), origin3, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(CylFundamental(3, Mat::identity(3), origin3, -1.0), std::invalid_argument);

  Mat skew(3, 2);
  skew.set_col(0, Vec{1.0, 0.0, 0.0});
  skew.set_col(1, Vec{1.0, 1.0, 0.0});  // not orthogonal to column 0
  CHECK_THROWS_AS(CylFundamental(2, skew, origin3, 1.0), std::invalid_argument);

  const CylFundamental radial = CylFundamental::radial(Vec{1.0, 2.0}, 2.0, -3.0);
  CHECK(radial.k == 2);
  CHECK(radial.ambient_dim() == 2);
  CHECK(radial.c1 == 2.0);
  CHECK(radial.c2 == -3.0);
}

TEST_CASE("radial jet matches hand-computed derivatives") {
  // n = 2, p = 4: W(r) = -(3/2) r^(2/3), W'(r) = -r^(-1/3).
  const PValue p = PValue::finite(4.0);
  const CylFundamental cf = CylFundamental::radial(Point(2), 2.0, 1.0);
  const double r = 0.7;
  const Jet2 j = cyl_jet(cf, Vec{r, 0.0}, p);

  const RadialFundamental rf(2, p);
  CHECK(j.value == doctest::Approx(2.0 * W(rf, r) + 1.0));
  CHECK(j.gradient[0] == doctest::Approx(2.0 * W_prime(rf, r)));
  CHECK(j.gradient[1] == doctest::Approx(0.0));
  CHECK(j.hessian(0, 0) == doctest::Approx(2.0 * W_second(rf, r)));
  CHECK(j.hessian(1, 1) == doctest::Approx(2.0 * W_prime(rf, r) / r));
  CHECK(j.hessian(0, 1) == doctest::Approx(0.0));
}

TEST_CASE("constant cylinder (c1 = 0) is smooth everywhere") {
  Mat q(3, 2);
  q.set_col(0, Vec{1.0, 0.0, 0.0});
  q.set_col(1, Vec{0.0, 1.0, 0.0});
  const CylFundamental cf(2, q, Point(3), 0.0, 7.0);
  const Jet2 j = cyl_jet(cf, Point(3), PValue::finite(3.0));  // on the axis
  CHECK(j.value == 7.0);
  CHECK(j.gradient.norm() == 0.0);
  CHECK(j.hessian.frobenius() == 0.0);
}

TEST_CASE("axis evaluation raises SingularityError") {
  Mat q(3, 1);
  q.set_col(0, Vec{0.0, 0.0, 1.0});
  const CylFundamental cf(1, q, Vec{1.0, 0.0, 0.0}, 1.0);
  // points with x - x0 orthogonal to the axis column project to y = 0
  CHECK_THROWS_AS(cyl_jet(cf, Vec{1.0, 5.0, 0.0}, PValue::finite(3.0)), SingularityError);
}

TEST_CASE("cylindrical Hessian eigenstructure with random frames") {
  Rng rng(404);
  std::vector<PValue> ps = {PValue::finite(3.0), PValue::finite(4.0), PValue::infinity()};
  for (int n : {2, 3, 5})
    for (int k = 1; k <= n; ++k)
      for (const PValue& p : ps) {
        const Mat q = rng.orthonormal_frame(n, k);
        const Point x0 = rng.point_in_box(n, 2.0);
        const double c1 = rng.uniform(0.5, 3.0);
        const CylFundamental cf(k, q, x0, c1);
        const Point x = rng.point_in_shell(x0, 0.5, 2.0);

        const Jet2 j = cyl_jet(cf, x, p);
        const Vec y = q.transposed() * (x - x0);
        const double r = y.norm();
        if (r == 0.0) continue;  // measure-zero, but don't crash the test

        const RadialFundamental rf(k, p);
        std::vector<double> expected;
        for (int i = 0; i < k - 1; ++i) expected.push_back(c1 * W_prime(rf, r) / r);
        for (int i = 0; i < n - k; ++i) expected.push_back(0.0);
        expected.push_back(c1 * W_second(rf, r));
        std::sort(expected.begin(), expected.end());

        const Spectrum s = jacobi_eigen(j.hessian);
        const double scale = 1.0 + j.hessian.frobenius();
        for (int i = 0; i < n; ++i)
          CHECK(std::abs(s.value(i) - expected[static_cast<size_t>(i)]) <= 1e-9 * scale);

        CHECK(gradient_is_top_eigenvector(cf, x, p));
      }
}

TEST_CASE("jet_gradient_is_top_eigenvector rejects misaligned jets") {
  // gradient along e1, but the big curvature sits along e2
  const Jet2 j(0.0, Vec{1.0, 0.0}, SymMatrix({{0.0, 0.0}, {0.0, 5.0}}));
  CHECK_FALSE(jet_gradient_is_top_eigenvector(j));

  const Jet2 aligned(0.0, Vec{2.0, 0.0}, SymMatrix({{5.0, 0.0}, {0.0, 1.0}}));
  CHECK(jet_gradient_is_top_eigenvector(aligned));

  CHECK_THROWS_AS(jet_gradient_is_top_eigenvector(Jet2::zero(2)), std::domain_error);
}
