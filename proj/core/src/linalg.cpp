#include "dplap/linalg.hpp"

#include <algorithm>
#include <numeric>

#include "dplap/errors.hpp"

namespace dplap {

SymMatrix conjugated(const Mat& q, const SymMatrix& m) {
  if (q.cols() != m.size())
    throw std::invalid_argument("conjugated: Q columns must match M size");
  const int n = q.rows(), k = q.cols();
  // T = Q M  (n×k)
  Mat t(n, k);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < k; ++j) {
      double s = 0.0;
      for (int l = 0; l < k; ++l) s += q(i, l) * m(l, j);
      t(i, j) = s;
    }
  SymMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double sij = 0.0, sji = 0.0;
      for (int l = 0; l < k; ++l) {
        sij += t(i, l) * q(j, l);
        sji += t(j, l) * q(i, l);
      }
      out.set(i, j, 0.5 * (sij + sji));
    }
  return out;
}

namespace {

double off_diagonal_frobenius(const double a[][kMaxDim], int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) s += a[i][j] * a[i][j];
  return std::sqrt(2.0 * s);
}

}  // namespace

Spectrum jacobi_eigen(const SymMatrix& a, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("jacobi_eigen: tol must be positive");
  const int n = a.size();

  double w[kMaxDim][kMaxDim];
  double v[kMaxDim][kMaxDim];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      w[i][j] = a(i, j);
      v[i][j] = (i == j) ? 1.0 : 0.0;
    }

  // The termination threshold scales with the input so that large-norm
  // Hessians converge: an absolute 1e-12 target is below roundoff once
  // ||A|| passes ~1e4.
  const double threshold = tol * (1.0 + a.frobenius());
  constexpr int kMaxSweeps = 100;

  bool converged = (n == 1) || off_diagonal_frobenius(w, n) <= threshold;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) {
        const double apq = w[p][q];
        if (apq == 0.0) continue;
        // Classic two-sided rotation choosing the smaller angle root.
        const double theta = (w[q][q] - w[p][p]) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 1.0 / (2.0 * theta);  // avoids theta^2 overflow
        } else {
          t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        const double app = w[p][p], aqq = w[q][q];
        w[p][p] = app - t * apq;
        w[q][q] = aqq + t * apq;
        w[p][q] = 0.0;
        w[q][p] = 0.0;
        for (int i = 0; i < n; ++i) {
          if (i == p || i == q) continue;
          const double aip = w[i][p], aiq = w[i][q];
          w[i][p] = aip - s * (aiq + tau * aip);
          w[p][i] = w[i][p];
          w[i][q] = aiq + s * (aip - tau * aiq);
          w[q][i] = w[i][q];
        }
        for (int i = 0; i < n; ++i) {
          const double vip = v[i][p], viq = v[i][q];
          v[i][p] = vip - s * (viq + tau * vip);
          v[i][q] = viq + s * (vip - tau * viq);
        }
      }
    converged = off_diagonal_frobenius(w, n) <= threshold;
  }
  if (!converged)
    throw ConvergenceError("jacobi_eigen: sweep budget exhausted before off-diagonal norm " +
                           std::to_string(off_diagonal_frobenius(w, n)) + " reached " +
                           std::to_string(threshold));

  // Ascending order; stable so equal eigenvalues keep diagonal order.
  std::array<int, kMaxDim> idx{};
  std::iota(idx.begin(), idx.begin() + n, 0);
  std::stable_sort(idx.begin(), idx.begin() + n,
                   [&](int i, int j) { return w[i][i] < w[j][j]; });

  Spectrum spec;
  spec.n = n;
  spec.vectors = Mat(n, n);
  for (int j = 0; j < n; ++j) {
    spec.values[static_cast<size_t>(j)] = w[idx[j]][idx[j]];
    for (int i = 0; i < n; ++i) spec.vectors(i, j) = v[i][idx[j]];
  }
  return spec;
}

std::pair<double, Vec> largest_eig(const SymMatrix& a) {
  Spectrum spec = jacobi_eigen(a);
  return {spec.max(), spec.vector(spec.n - 1)};
}

double rayleigh(const SymMatrix& a, const Vec& z) {
  const double zz = z.norm2();
  if (zz == 0.0) throw std::domain_error("rayleigh: undefined for the zero vector");
  // Normalize first: the quotient stays O(||A||) even when |z| is extreme.
  Vec u = z;
  u *= 1.0 / z.norm();
  return a.quad(u);
}

}  // namespace dplap
