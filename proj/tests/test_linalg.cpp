#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "dplap/linalg.hpp"
#include "dplap/rng.hpp"
#include "oracles.hpp"

using namespace dplap;

TEST_CASE("Vec basics") {
  Vec v{3.0, 4.0};
  CHECK(v.size() == 2);
  CHECK(v.norm() == doctest::Approx(5.0));
  CHECK(v.dot(Vec{1.0, 1.0}) == doctest::Approx(7.0));

  const Vec u = v.normalized();
  CHECK(u.norm() == doctest::Approx(1.0));
  CHECK_THROWS_AS(Vec(2).normalized(), std::domain_error);

  CHECK(Vec::unit(3, 1)[1] == 1.0);
  CHECK(Vec::unit(3, 1)[0] == 0.0);
  CHECK_THROWS_AS(Vec(0), std::invalid_argument);
  CHECK_THROWS_AS(Vec(kMaxDim + 1), std::invalid_argument);
  CHECK_THROWS_AS((Vec{1.0, std::nan("")}), std::invalid_argument);
}

TEST_CASE("SymMatrix construction enforces symmetry") {
  CHECK_THROWS_AS(SymMatrix({{1.0, 2.0}, {3.0, 4.0}}), std::invalid_argument);
  SymMatrix a({{1.0, 2.0}, {2.0, 4.0}});
  CHECK(a(0, 1) == 2.0);
  a.set(0, 1, -1.0);
  CHECK(a(1, 0) == -1.0);

  const Vec d{1.0, 2.0, 3.0};
  CHECK(SymMatrix::diagonal(d).trace() == doctest::Approx(6.0));
  const SymMatrix o = SymMatrix::outer(Vec{1.0, 2.0});
  CHECK(o(0, 0) == 1.0);
  CHECK(o(0, 1) == 2.0);
  CHECK(o(1, 1) == 4.0);
}

TEST_CASE("quadratic form and rayleigh quotient") {
  const SymMatrix a({{2.0, 0.0}, {0.0, 6.0}});
  CHECK(a.quad(Vec{1.0, 1.0}) == doctest::Approx(8.0));
  // rayleigh normalizes, quad does not
  CHECK(rayleigh(a, Vec{2.0, 2.0}) == doctest::Approx(4.0));
  CHECK_THROWS_AS(rayleigh(a, Vec(2)), std::domain_error);
}

TEST_CASE("orthonormality defect") {
  CHECK(Mat::identity(4).orthonormality_defect() == 0.0);
  Mat q(2, 2);
  q.at(0, 0) = 1.0;
  q.at(1, 0) = 1.0;  // columns not orthonormal
  q.at(1, 1) = 1.0;
  CHECK(q.orthonormality_defect() > 0.5);

  const double c = std::cos(0.3), s = std::sin(0.3);
  const Mat rot{{c, -s}, {s, c}};
  CHECK(rot.orthonormality_defect() < 1e-15);
}

TEST_CASE("conjugation by a frame") {
  // Embed a 1x1 block into 3d along a given unit column.
  Mat q(3, 1);
  q.set_col(0, Vec{1.0, 2.0, 2.0}.normalized());
  const SymMatrix m({{9.0}});
  const SymMatrix c = conjugated(q, m);
  // q m q^T = 9 * qq^T; spot-check entries
  CHECK(c(0, 0) == doctest::Approx(9.0 / 9.0));
  CHECK(c(0, 1) == doctest::Approx(9.0 * (1.0 / 3.0) * (2.0 / 3.0)));
  CHECK(c.trace() == doctest::Approx(9.0));
}

TEST_CASE("jacobi on a fixed 3x3 with known spectrum") {
  // Block diagonal: 2x2 [[2,1],[1,2]] has eigenvalues {1,3}.
  const SymMatrix a({{2.0, 1.0, 0.0}, {1.0, 2.0, 0.0}, {0.0, 0.0, 5.0}});
  const Spectrum s = jacobi_eigen(a);
  CHECK(s.value(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.value(1) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(s.value(2) == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(s.min() == s.value(0));
  CHECK(s.max() == s.value(2));

  // the eigenvector for 1 is (1,-1,0)/sqrt(2) up to sign
  const Vec v0 = s.vector(0);
  CHECK(std::abs(v0.dot(Vec{1.0, -1.0, 0.0})) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("jacobi ties keep diagonal order") {
  // The identity triggers no rotations, so eigenvectors must come back as
  // the coordinate axes in order. Downstream code picks "the" top
  // eigenvector of degenerate Hessians and relies on this being stable.
  const Spectrum s = jacobi_eigen(SymMatrix::identity(3));
  for (int i = 0; i < 3; ++i) {
    CHECK(s.value(i) == 1.0);
    CHECK(s.vector(i)[i] == 1.0);
  }
}

TEST_CASE("jacobi against the trigonometric 3x3 oracle") {
  Rng rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    SymMatrix a(3);
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) a.set(i, j, rng.uniform(-5.0, 5.0));
    const Spectrum s = jacobi_eigen(a);
    const auto ref = oracle::eigenvalues3(a);
    for (int i = 0; i < 3; ++i)
      CHECK(s.value(i) == doctest::Approx(ref[static_cast<size_t>(i)]).epsilon(1e-9));

    // eigen residuals and frame quality
    CHECK(s.vectors.orthonormality_defect() < 1e-13);
    const double scale = 1.0 + a.frobenius();
    for (int i = 0; i < 3; ++i) {
      const Vec r = a * s.vector(i) - s.value(i) * s.vector(i);
      CHECK(r.norm() <= 1e-12 * scale);
    }
  }
}

TEST_CASE("jacobi handles badly scaled matrices") {
  // The stopping rule is relative to ||A||_F, so a matrix of norm ~1e8
  // still converges and its residuals scale accordingly.
  Rng rng(55);
  SymMatrix a(4);
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) a.set(i, j, rng.uniform(-1e8, 1e8));
  const Spectrum s = jacobi_eigen(a);
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) sum += s.value(i);
  CHECK(sum == doctest::Approx(a.trace()).epsilon(1e-12));
}

TEST_CASE("largest_eig agrees with the full decomposition") {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform01() * 6.0);
    SymMatrix a(n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) a.set(i, j, rng.uniform(-2.0, 2.0));
    const auto [lmax, v] = largest_eig(a);
    CHECK(lmax == doctest::Approx(jacobi_eigen(a).max()));
    CHECK(v.norm() == doctest::Approx(1.0));
    CHECK(rayleigh(a, v) == doctest::Approx(lmax).epsilon(1e-10));
  }
}
