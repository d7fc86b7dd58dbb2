#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace dplap {

// The exponent p of the operator family: either a finite real p >= 2 or
// infinity. Infinity is a tag, never a large float, so the two regimes
// cannot blur into each other through arithmetic.
class PValue {
 public:
  static PValue finite(double p) {
    if (!std::isfinite(p) || p < 2.0)
      throw std::domain_error("PValue: finite p must satisfy p >= 2, got " + std::to_string(p));
    return PValue(p, false);
  }
  static PValue infinity() { return PValue(0.0, true); }

  bool is_infinite() const { return infinite_; }

  // Finite value; querying it in the infinite case is a logic error.
  double value() const {
    if (infinite_) throw std::logic_error("PValue: no finite value, p is infinite");
    return p_;
  }

  // Gradient exponent of the unnormalized operator: p-2 when finite, 2 at
  // infinity (where the extra |∇u|² comes from the two gradient factors).
  double alpha() const { return infinite_ ? 2.0 : p_ - 2.0; }

  friend bool operator==(const PValue& a, const PValue& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.p_ == b.p_);
  }

  std::string str() const { return infinite_ ? "inf" : std::to_string(p_); }

 private:
  PValue(double p, bool inf) : p_(p), infinite_(inf) {}
  double p_;
  bool infinite_;
};

}  // namespace dplap
