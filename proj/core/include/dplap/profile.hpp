#pragma once

#include <optional>
#include <vector>

#include "dplap/fundsol.hpp"

namespace dplap {

// A decreasing one-variable profile U on (0, inf) with a (possibly +inf)
// limit value at 0, smooth except at finitely many declared kink radii.
// Rotating U around a center produces the radial fields this library
// feeds to the pointwise operators, so U carries exact first and second
// derivatives away from its kinks.
//
// Supported shapes (all decreasing by construction):
//   fundamental            c1 W(r) + c2,                 c1 >= 0
//   truncated_fundamental  min{ c1 W(r) + c2, level }
//   min_pair               min{ c1a W + c2a, c1b W + c2b }
//   concave_poly           a r^2 + b r + c,              a, b <= 0
//   constant               v
// Kinks of the min shapes are computed at construction via W_inverse.
class RadialProfile {
 public:
  enum class Kind { Fundamental, TruncatedFundamental, MinPair, ConcavePoly, Constant };

  static RadialProfile fundamental(const RadialFundamental& rf, double c1 = 1.0,
                                   double c2 = 0.0);
  static RadialProfile truncated_fundamental(const RadialFundamental& rf, double level,
                                             double c1 = 1.0, double c2 = 0.0);
  static RadialProfile min_pair(const RadialFundamental& rf, double c1a, double c2a,
                                double c1b, double c2b);
  static RadialProfile concave_poly(double a, double b, double c);
  static RadialProfile constant(double v);

  // U(r) for r >= 0. Never throws for finite r >= 0; returns +inf at r = 0
  // when the profile has a pole there. Continuous on (0, inf).
  double value(double r) const;

  // U'(r) and U''(r) for r > 0 off the kink set; kinks and r = 0 throw
  // SingularityError.
  double derivative(double r) const;
  double second_derivative(double r) const;

  const std::vector<double>& kink_radii() const { return kinks_; }
  bool is_kink(double r) const;
  bool is_constant() const;
  bool has_pole_at_origin() const;

  Kind kind() const { return kind_; }
  // Declared parameters, for serialization. Meaning depends on kind():
  //   Fundamental/TruncatedFundamental: {c1, c2 [, level]}
  //   MinPair:      {c1a, c2a, c1b, c2b}
  //   ConcavePoly:  {a, b, c}
  //   Constant:     {v}
  const std::vector<double>& params() const { return params_; }

 private:
  RadialProfile() = default;

  struct Branch {
    double c1, c2;  // c1 W(r) + c2; c1 = 0 is a constant branch
    double at(const RadialFundamental& rf, double r) const { return c1 * W(rf, r) + c2; }
  };

  // Active W-branch for a given radius (W-based kinds only).
  const Branch& branch_at(double r) const;

  Kind kind_ = Kind::Constant;
  std::vector<double> params_;
  std::optional<RadialFundamental> rf_;  // present for W-based kinds
  std::vector<Branch> pieces_;           // piece i active on (kink_{i-1}, kink_i)
  std::vector<double> kinks_;            // ascending, strictly inside (0, inf)
  double pa_ = 0.0, pb_ = 0.0, pc_ = 0.0;  // polynomial kinds
};

}  // namespace dplap
