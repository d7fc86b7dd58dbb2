#include "dplap/profile.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "dplap/errors.hpp"

namespace dplap {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_scale(double c1, const char* who) {
  if (!std::isfinite(c1) || c1 < 0.0)
    throw std::invalid_argument(std::string(who) + ": coefficient on W must be finite and >= 0");
}
}  // namespace

RadialProfile RadialProfile::fundamental(const RadialFundamental& rf, double c1, double c2) {
  check_scale(c1, "RadialProfile::fundamental");
  if (!std::isfinite(c2)) throw std::invalid_argument("RadialProfile::fundamental: bad offset");
  RadialProfile u;
  u.kind_ = Kind::Fundamental;
  u.params_ = {c1, c2};
  u.rf_ = rf;
  u.pieces_ = {Branch{c1, c2}};
  return u;
}

RadialProfile RadialProfile::truncated_fundamental(const RadialFundamental& rf, double level,
                                                   double c1, double c2) {
  check_scale(c1, "RadialProfile::truncated_fundamental");
  if (!std::isfinite(level) || !std::isfinite(c2))
    throw std::invalid_argument("RadialProfile::truncated_fundamental: bad parameter");
  RadialProfile u;
  u.kind_ = Kind::TruncatedFundamental;
  u.params_ = {c1, c2, level};
  u.rf_ = rf;

  const Branch wb{c1, c2}, cb{0.0, level};
  if (c1 == 0.0) {
    u.pieces_ = {c2 <= level ? wb : cb};
    return u;
  }
  try {
    const double r0 = W_inverse(rf, (level - c2) / c1);
    // W decreases, so the W-branch exceeds the level left of the crossing.
    u.pieces_ = {cb, wb};
    u.kinks_ = {r0};
  } catch (const std::domain_error&) {
    // No crossing: one branch lies below the other everywhere.
    u.pieces_ = {wb.at(rf, 1.0) <= cb.at(rf, 1.0) ? wb : cb};
  }
  return u;
}

RadialProfile RadialProfile::min_pair(const RadialFundamental& rf, double c1a, double c2a,
                                      double c1b, double c2b) {
  check_scale(c1a, "RadialProfile::min_pair");
  check_scale(c1b, "RadialProfile::min_pair");
  if (!std::isfinite(c2a) || !std::isfinite(c2b))
    throw std::invalid_argument("RadialProfile::min_pair: bad offset");
  RadialProfile u;
  u.kind_ = Kind::MinPair;
  u.params_ = {c1a, c2a, c1b, c2b};
  u.rf_ = rf;

  const Branch a{c1a, c2a}, b{c1b, c2b};
  if (c1a == c1b) {
    u.pieces_ = {c2a <= c2b ? a : b};
    return u;
  }
  try {
    const double r0 = W_inverse(rf, (c2b - c2a) / (c1a - c1b));
    // Left of the crossing W is larger, so the branch with the smaller
    // W-coefficient is the minimum there.
    u.pieces_ = (c1a > c1b) ? std::vector<Branch>{b, a} : std::vector<Branch>{a, b};
    u.kinks_ = {r0};
  } catch (const std::domain_error&) {
    u.pieces_ = {a.at(rf, 1.0) <= b.at(rf, 1.0) ? a : b};
  }
  return u;
}

RadialProfile RadialProfile::concave_poly(double a, double b, double c) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c))
    throw std::invalid_argument("RadialProfile::concave_poly: bad coefficient");
  if (a > 0.0 || b > 0.0)
    throw std::invalid_argument(
        "RadialProfile::concave_poly: need a <= 0 and b <= 0 for a decreasing profile");
  RadialProfile u;
  u.kind_ = Kind::ConcavePoly;
  u.params_ = {a, b, c};
  u.pa_ = a;
  u.pb_ = b;
  u.pc_ = c;
  return u;
}

RadialProfile RadialProfile::constant(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("RadialProfile::constant: bad value");
  RadialProfile u;
  u.kind_ = Kind::Constant;
  u.params_ = {v};
  u.pc_ = v;
  return u;
}

const RadialProfile::Branch& RadialProfile::branch_at(double r) const {
  size_t i = 0;
  while (i < kinks_.size() && r > kinks_[i]) ++i;
  return pieces_[i];
}

double RadialProfile::value(double r) const {
  if (!(r >= 0.0)) throw std::domain_error("RadialProfile::value: negative radius");
  if (!rf_) return pa_ * r * r + pb_ * r + pc_;
  if (r == 0.0) {
    const Branch& b0 = pieces_.front();
    if (b0.c1 == 0.0) return b0.c2;
    const double w0 = W_at_origin(*rf_);
    return w0 == kInf ? kInf : b0.c1 * w0 + b0.c2;
  }
  return branch_at(r).at(*rf_, r);
}

double RadialProfile::derivative(double r) const {
  if (!(r > 0.0))
    throw SingularityError("RadialProfile::derivative: undefined at the origin");
  if (is_kink(r))
    throw SingularityError("RadialProfile::derivative: kink radius " + std::to_string(r));
  if (!rf_) return 2.0 * pa_ * r + pb_;
  const Branch& b = branch_at(r);
  return b.c1 == 0.0 ? 0.0 : b.c1 * W_prime(*rf_, r);
}

double RadialProfile::second_derivative(double r) const {
  if (!(r > 0.0))
    throw SingularityError("RadialProfile::second_derivative: undefined at the origin");
  if (is_kink(r))
    throw SingularityError("RadialProfile::second_derivative: kink radius " + std::to_string(r));
  if (!rf_) return 2.0 * pa_;
  const Branch& b = branch_at(r);
  return b.c1 == 0.0 ? 0.0 : b.c1 * W_second(*rf_, r);
}

bool RadialProfile::is_kink(double r) const {
  for (double k : kinks_)
    if (std::abs(r - k) <= 1e-12 * (1.0 + k)) return true;
  return false;
}

bool RadialProfile::is_constant() const {
  if (kind_ == Kind::Constant) return true;
  if (kind_ == Kind::ConcavePoly) return pa_ == 0.0 && pb_ == 0.0;
  for (const Branch& b : pieces_)
    if (b.c1 != 0.0) return false;
  return true;
}

bool RadialProfile::has_pole_at_origin() const { return value(0.0) == kInf; }

}  // namespace dplap
