#pragma once

#include "dplap/linalg.hpp"

namespace dplap {

using Point = Vec;

// Second-order jet of a scalar function at a point: value, gradient and
// Hessian. This is the common currency between field evaluation and the
// pointwise operators.
struct Jet2 {
  double value = 0.0;
  Vec gradient;
  SymMatrix hessian;

  Jet2() = default;
  Jet2(double v, Vec g, SymMatrix h) : value(v), gradient(std::move(g)), hessian(std::move(h)) {
    if (gradient.size() != hessian.size())
      throw std::invalid_argument("Jet2: gradient/Hessian dimension mismatch");
  }

  static Jet2 zero(int n) { return Jet2(0.0, Vec(n), SymMatrix(n)); }

  int dim() const { return gradient.size(); }

  Jet2& operator+=(const Jet2& o) {
    value += o.value;
    gradient += o.gradient;
    hessian += o.hessian;
    return *this;
  }
  Jet2& operator*=(double s) {
    value *= s;
    gradient *= s;
    hessian *= s;
    return *this;
  }
  friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
  friend Jet2 operator*(double s, Jet2 a) { return a *= s; }
};

}  // namespace dplap
