#pragma once

#include <array>
#include <cmath>
#include <initializer_list>
#include <stdexcept>
#include <utility>

namespace dplap {

// All dense objects live on the stack with a hard dimension cap. The
// operators this library evaluates act on Hessians of modest dimension;
// the cap keeps evaluation allocation-free.
inline constexpr int kMaxDim = 16;

namespace detail {
inline void check_dim(int n) {
  if (n < 1 || n > kMaxDim)
    throw std::invalid_argument("linalg: dimension " + std::to_string(n) +
                                " outside [1, " + std::to_string(kMaxDim) + "]");
}
inline void check_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + ": non-finite entry");
}
}  // namespace detail

class Vec {
 public:
  Vec() = default;
  explicit Vec(int n) : n_(n) { detail::check_dim(n); data_.fill(0.0); }
  Vec(std::initializer_list<double> xs) : n_(static_cast<int>(xs.size())) {
    detail::check_dim(n_);
    int i = 0;
    for (double v : xs) { detail::check_finite(v, "Vec"); data_[i++] = v; }
  }

  static Vec zero(int n) { return Vec(n); }
  static Vec unit(int n, int i) {
    Vec e(n);
    if (i < 0 || i >= n) throw std::invalid_argument("Vec::unit: index out of range");
    e[i] = 1.0;
    return e;
  }

  int size() const { return n_; }
  double& operator[](int i) { return data_[static_cast<size_t>(i)]; }
  double operator[](int i) const { return data_[static_cast<size_t>(i)]; }

  Vec& operator+=(const Vec& o) {
    same_size(o);
    for (int i = 0; i < n_; ++i) data_[i] += o.data_[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    same_size(o);
    for (int i = 0; i < n_; ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Vec& operator*=(double s) {
    for (int i = 0; i < n_; ++i) data_[i] *= s;
    return *this;
  }
  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator*(double s, Vec a) { return a *= s; }
  friend Vec operator*(Vec a, double s) { return a *= s; }
  friend Vec operator-(Vec a) { return a *= -1.0; }

  double dot(const Vec& o) const {
    same_size(o);
    double s = 0.0;
    for (int i = 0; i < n_; ++i) s += data_[i] * o.data_[i];
    return s;
  }
  double norm2() const { return dot(*this); }
  double norm() const { return std::sqrt(norm2()); }

  // Unit vector in the same direction; the zero vector has none.
  Vec normalized() const {
    double r = norm();
    if (r == 0.0) throw std::domain_error("Vec::normalized: zero vector");
    Vec u = *this;
    u *= 1.0 / r;
    return u;
  }

 private:
  void same_size(const Vec& o) const {
    if (n_ != o.n_) throw std::invalid_argument("Vec: dimension mismatch");
  }
  int n_ = 0;
  std::array<double, kMaxDim> data_{};
};

// Rectangular matrix, up to kMaxDim in each extent. Used for orthogonal
// frames and eigenvector columns; symmetric data goes in SymMatrix.
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols) : r_(rows), c_(cols) {
    detail::check_dim(rows);
    detail::check_dim(cols);
    data_.fill(0.0);
  }
  Mat(std::initializer_list<std::initializer_list<double>> rows)
      : Mat(static_cast<int>(rows.size()), static_cast<int>(rows.begin()->size())) {
    int i = 0;
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != c_)
        throw std::invalid_argument("Mat: ragged initializer");
      int j = 0;
      for (double v : row) { detail::check_finite(v, "Mat"); at(i, j++) = v; }
      ++i;
    }
  }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
  }

  int rows() const { return r_; }
  int cols() const { return c_; }
  double& at(int i, int j) { return data_[static_cast<size_t>(i) * kMaxDim + j]; }
  double at(int i, int j) const { return data_[static_cast<size_t>(i) * kMaxDim + j]; }
  double& operator()(int i, int j) { return at(i, j); }
  double operator()(int i, int j) const { return at(i, j); }

  Vec col(int j) const {
    Vec v(r_);
    for (int i = 0; i < r_; ++i) v[i] = at(i, j);
    return v;
  }
  void set_col(int j, const Vec& v) {
    if (v.size() != r_) throw std::invalid_argument("Mat::set_col: dimension mismatch");
    for (int i = 0; i < r_; ++i) at(i, j) = v[i];
  }

  Mat transposed() const {
    Mat t(c_, r_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  Vec operator*(const Vec& v) const {
    if (v.size() != c_) throw std::invalid_argument("Mat: dimension mismatch in M*v");
    Vec out(r_);
    for (int i = 0; i < r_; ++i) {
      double s = 0.0;
      for (int j = 0; j < c_; ++j) s += at(i, j) * v[j];
      out[i] = s;
    }
    return out;
  }

  Mat operator*(const Mat& o) const {
    if (c_ != o.r_) throw std::invalid_argument("Mat: dimension mismatch in M*N");
    Mat out(r_, o.c_);
    for (int i = 0; i < r_; ++i)
      for (int k = 0; k < c_; ++k) {
        double a = at(i, k);
        if (a == 0.0) continue;
        for (int j = 0; j < o.c_; ++j) out.at(i, j) += a * o.at(k, j);
      }
    return out;
  }

  // Max |(QᵀQ − I)_ij|; zero for an exact orthonormal frame.
  double orthonormality_defect() const {
    double worst = 0.0;
    for (int a = 0; a < c_; ++a)
      for (int b = a; b < c_; ++b) {
        double g = col(a).dot(col(b)) - (a == b ? 1.0 : 0.0);
        worst = std::max(worst, std::abs(g));
      }
    return worst;
  }

 private:
  int r_ = 0, c_ = 0;
  std::array<double, kMaxDim * kMaxDim> data_{};
};

// Symmetric matrix with mirrored writes, so asymmetry cannot be introduced
// entry by entry. Full storage; the sizes involved make packing pointless.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int n) : n_(n) { detail::check_dim(n); data_.fill(0.0); }
  SymMatrix(std::initializer_list<std::initializer_list<double>> rows)
      : SymMatrix(static_cast<int>(rows.size())) {
    int i = 0;
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != n_)
        throw std::invalid_argument("SymMatrix: initializer is not square");
      int j = 0;
      for (double v : row) {
        detail::check_finite(v, "SymMatrix");
        if (j < i && v != at(i, j))
          throw std::invalid_argument("SymMatrix: initializer is not symmetric");
        at(i, j) = v;
        at(j, i) = v;
        ++j;
      }
      ++i;
    }
  }

  static SymMatrix identity(int n) {
    SymMatrix m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
  }
  static SymMatrix diagonal(const Vec& d) {
    SymMatrix m(d.size());
    for (int i = 0; i < d.size(); ++i) m.at(i, i) = d[i];
    return m;
  }
  // vvᵀ
  static SymMatrix outer(const Vec& v) {
    SymMatrix m(v.size());
    for (int i = 0; i < v.size(); ++i)
      for (int j = 0; j < v.size(); ++j) m.at(i, j) = v[i] * v[j];
    return m;
  }

  int size() const { return n_; }
  double operator()(int i, int j) const { return at(i, j); }
  void set(int i, int j, double v) {
    detail::check_finite(v, "SymMatrix::set");
    at(i, j) = v;
    at(j, i) = v;
  }

  double trace() const {
    double s = 0.0;
    for (int i = 0; i < n_; ++i) s += at(i, i);
    return s;
  }
  double frobenius() const {
    double s = 0.0;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) s += at(i, j) * at(i, j);
    return std::sqrt(s);
  }

  SymMatrix& operator+=(const SymMatrix& o) {
    same_size(o);
    for (size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  SymMatrix& operator-=(const SymMatrix& o) {
    same_size(o);
    for (size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  SymMatrix& operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
  }
  friend SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
  friend SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
  friend SymMatrix operator*(double s, SymMatrix a) { return a *= s; }

  Vec operator*(const Vec& v) const {
    if (v.size() != n_) throw std::invalid_argument("SymMatrix: dimension mismatch in A*v");
    Vec out(n_);
    for (int i = 0; i < n_; ++i) {
      double s = 0.0;
      for (int j = 0; j < n_; ++j) s += at(i, j) * v[j];
      out[i] = s;
    }
    return out;
  }

  // zᵀAz (not normalized; see rayleigh() for the quotient).
  double quad(const Vec& z) const { return z.dot((*this) * z); }

 private:
  double& at(int i, int j) { return data_[static_cast<size_t>(i) * kMaxDim + j]; }
  double at(int i, int j) const { return data_[static_cast<size_t>(i) * kMaxDim + j]; }
  void same_size(const SymMatrix& o) const {
    if (n_ != o.n_) throw std::invalid_argument("SymMatrix: dimension mismatch");
  }
  int n_ = 0;
  std::array<double, kMaxDim * kMaxDim> data_{};
};

// Q M Qᵀ for Q with orthonormal columns (n×k) and M symmetric (k×k).
// The result is symmetrized explicitly to keep roundoff from leaking
// asymmetry into downstream eigen decompositions.
SymMatrix conjugated(const Mat& q, const SymMatrix& m);

struct Spectrum {
  int n = 0;
  std::array<double, kMaxDim> values{};  // ascending
  Mat vectors;                           // column i pairs with values[i]

  double value(int i) const { return values[static_cast<size_t>(i)]; }
  Vec vector(int i) const { return vectors.col(i); }
  double min() const { return values[0]; }
  double max() const { return values[static_cast<size_t>(n - 1)]; }
};

// Full eigendecomposition by cyclic Jacobi rotations. Terminates when the
// off-diagonal Frobenius norm drops below tol*(1 + ||A||_F); throws
// ConvergenceError if 100 sweeps do not get there. Eigenvalues come back
// ascending; equal eigenvalues keep their diagonal order (stable sort), and
// eigenvector signs are whatever the rotations produce.
Spectrum jacobi_eigen(const SymMatrix& a, double tol = 1e-12);

// Largest eigenvalue and a unit eigenvector for it.
std::pair<double, Vec> largest_eig(const SymMatrix& a);

// zᵀAz / |z|². Rejects z = 0.
double rayleigh(const SymMatrix& a, const Vec& z);

}  // namespace dplap
