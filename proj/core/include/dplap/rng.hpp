#pragma once

#include <cstdint>
#include <random>

#include "dplap/jet.hpp"
#include "dplap/linalg.hpp"

namespace dplap {

// Deterministic random stream for sampling harnesses and reports.
// std::mt19937_64 produces an engine sequence fixed by the standard, and
// the 53-bit mapping below avoids the library distributions (whose output
// is implementation-defined), so a (generator, seed) pair pins every
// sample exactly. Reports carry kGeneratorName next to the seed.
class Rng {
 public:
  static constexpr const char* kGeneratorName = "mt19937_64/u53";

  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  Point point_in_box(int n, double half_width) {
    Point x(n);
    for (int i = 0; i < n; ++i) x[i] = uniform(-half_width, half_width);
    return x;
  }

  // Uniform direction by rejection from the unit ball.
  Vec unit_vector(int n) {
    for (;;) {
      Vec v(n);
      for (int i = 0; i < n; ++i) v[i] = uniform(-1.0, 1.0);
      const double r = v.norm();
      if (r > 1e-3 && r <= 1.0) return v * (1.0 / r);
    }
  }

  // Point with a uniformly random direction and |x - center| uniform in
  // [r_min, r_max].
  Point point_in_shell(const Point& center, double r_min, double r_max) {
    return center + uniform(r_min, r_max) * unit_vector(center.size());
  }

  // n x k frame with orthonormal columns: Gram-Schmidt over random
  // directions, re-drawing when a direction is nearly dependent.
  Mat orthonormal_frame(int n, int k) {
    if (k < 1 || k > n) throw std::invalid_argument("orthonormal_frame: need 1 <= k <= n");
    Mat q(n, k);
    int col = 0;
    while (col < k) {
      Vec v = unit_vector(n);
      for (int j = 0; j < col; ++j) {
        const Vec qj = q.col(j);
        v -= v.dot(qj) * qj;
      }
      const double r = v.norm();
      if (r < 1e-6) continue;
      q.set_col(col, v * (1.0 / r));
      ++col;
    }
    return q;
  }

  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace dplap
