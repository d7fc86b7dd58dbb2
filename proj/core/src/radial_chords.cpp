#include "dplap/radial_chords.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "dplap/errors.hpp"
#include "dplap/rng.hpp"

namespace dplap {

double chord_constant(const RadialProfile& u, double a, double b, const RadialFundamental& rf) {
  if (!(0.0 < a && a < b))
    throw std::domain_error("chord_constant: need 0 < a < b, got a = " + std::to_string(a) +
                            ", b = " + std::to_string(b));
  const double ua = u.value(a), ub = u.value(b);
  if (!std::isfinite(ua) || !std::isfinite(ub))
    throw SingularityError("chord_constant: profile value is not finite at an endpoint");
  // W is strictly decreasing, so the denominator is positive.
  return (ua - ub) / (W(rf, a) - W(rf, b));
}

ChordData chord_profile(const RadialProfile& u, double a, double b,
                        const RadialFundamental& rf) {
  const double c = chord_constant(u, a, b, rf);
  const double ub = u.value(b);
  return ChordData{a, b, c, c, ub - c * W(rf, b)};
}

namespace {

// Estimate of one one-sided limit by geometric refinement. The difference
// quotient loses one bit of accuracy per level, so iteration stops either
// on the Cauchy criterion or once the predicted roundoff noise of C_j
// reaches 1e-9, and the limit is Richardson-extrapolated from the last
// two iterates (the quotient is linear in the offset b 2^-j).
double one_sided_limit(const RadialProfile& u, double b, const RadialFundamental& rf,
                       bool left) {
  const double ub = u.value(b);
  const double wb = std::abs(W(rf, b));
  const double dwb = std::abs(W_prime(rf, b));
  constexpr double kEps = 2.2e-16;

  double c_prev = 0.0;
  bool have_prev = false;
  int quiet = 0;
  for (int j = 1; j <= 40; ++j) {
    const double off = std::ldexp(1.0, -j);
    const double r = left ? b * (1.0 - off) : b * (1.0 + off);
    const double c = left ? chord_constant(u, r, b, rf) : chord_constant(u, b, r, rf);
    const double noise =
        std::ldexp(1.0, j) * kEps * (std::abs(ub) + std::abs(c) * wb + 1.0) / (dwb * b);
    if (have_prev) {
      // The left sequence increases, the right one decreases.
      const double violation = left ? c_prev - c : c - c_prev;
      if (violation > 1e-8 + 8.0 * noise)
        throw ProfileError("one_sided_chord_limits: chord constants not monotone at b = " +
                           std::to_string(b) + " (profile is not radially p-superharmonic)");
      if (std::abs(c - c_prev) < 1e-8) {
        if (++quiet >= 3) return 2.0 * c - c_prev;
      } else {
        quiet = 0;
      }
      if (noise > 1e-9) return 2.0 * c - c_prev;
    }
    c_prev = c;
    have_prev = true;
  }
  return c_prev;  // j = 40 reached; the last iterate is the best available
}

}  // namespace

std::pair<double, double> one_sided_chord_limits(const RadialProfile& u, double b,
                                                 const RadialFundamental& rf) {
  if (!(b > 0.0)) throw std::domain_error("one_sided_chord_limits: need b > 0");
  if (!std::isfinite(u.value(b)))
    throw SingularityError("one_sided_chord_limits: profile value not finite at b");
  return {one_sided_limit(u, b, rf, true), one_sided_limit(u, b, rf, false)};
}

CylFundamental touching_from_above(const RadialProfile& u, double b,
                                   const RadialFundamental& rf) {
  const int n = rf.n;
  if (b < 0.0) throw std::domain_error("touching_from_above: need b >= 0");
  if (b == 0.0) {
    const double u0 = u.value(0.0);
    if (!std::isfinite(u0))
      throw SingularityError("touching_from_above: profile has a pole at the origin");
    return CylFundamental(n, Mat::identity(n), Vec(n), 0.0, u0);
  }
  const auto [cm, cp] = one_sided_chord_limits(u, b, rf);
  // Chord constants of a decreasing profile are >= 0; strip numeric dust
  // so the field constructor's sign requirement holds.
  const double cb = std::max(0.0, 0.5 * (cm + cp));
  const double ub = u.value(b);
  return CylFundamental(n, Mat::identity(n), Vec(n), cb, ub - cb * W(rf, b));
}

namespace {

bool touching_stays_above(const RadialProfile& u, const CylFundamental& h, double b,
                          const RadialFundamental& rf, double tol) {
  // h as a function of radius: c1 W(r) + c2.
  constexpr int kSamples = 200;
  const double lo = std::log(b / 10.0), hi = std::log(10.0 * b);
  for (int i = 0; i < kSamples; ++i) {
    const double r = std::exp(lo + (hi - lo) * i / (kSamples - 1));
    const double hr = h.c1 * W(rf, r) + h.c2;
    if (hr < u.value(r) - tol) return false;
  }
  return true;
}

}  // namespace

RadialEquivalenceReport verify_radial_equivalence(const RadialProfile& u,
                                                  const RadialFundamental& rf,
                                                  const std::vector<double>& radii,
                                                  double tol_scale) {
  const double tol = 1e-9 * tol_scale;
  RadialEquivalenceReport rep;
  double max_res = -std::numeric_limits<double>::infinity();

  for (double r : radii) {
    if (!(r > 0.0)) throw std::invalid_argument("verify_radial_equivalence: radii must be > 0");
    try {
      const double du = u.derivative(r);
      const double d2u = u.second_derivative(r);
      const double res = dominative_profile(du, d2u, r, rf.n, rf.n, rf.p);
      if (res > max_res) {
        max_res = res;
        rep.witness_radius = r;
      }
      ++rep.radii_checked;
    } catch (const SingularityError&) {
      ++rep.skipped_kinks;
    }
  }
  rep.max_residual = rep.radii_checked > 0 ? max_res : 0.0;

  bool kinks_ok = true;
  for (double k : u.kink_radii()) {
    KinkCheck chk{k, 0.0, 0.0, false, false};
    const auto [cm, cp] = one_sided_chord_limits(u, k, rf);
    chk.c_minus = cm;
    chk.c_plus = cp;
    chk.ordered = cm <= cp + 1e-8 * tol_scale;
    const CylFundamental h = touching_from_above(u, k, rf);
    const double hk = h.c1 * W(rf, k) + h.c2;
    chk.touch_ok = std::abs(hk - u.value(k)) <= 1e-10 * (1.0 + std::abs(u.value(k))) &&
                   touching_stays_above(u, h, k, rf, tol);
    kinks_ok = kinks_ok && chk.ordered && chk.touch_ok;
    rep.kinks.push_back(chk);
  }

  rep.pass = rep.radii_checked > 0 && rep.max_residual <= tol && kinks_ok;
  return rep;
}

Theorem2Report verify_theorem2(const std::vector<std::pair<RadialProfile, Point>>& profiles,
                               const std::optional<ScalarField>& concave_part,
                               const RadialFundamental& rf, const SamplingPlan& plan) {
  if (profiles.empty()) throw std::invalid_argument("verify_theorem2: no profiles");
  const int n = rf.n;
  const PValue& p = rf.p;
  for (const auto& [u, center] : profiles)
    if (center.size() != n) throw std::invalid_argument("verify_theorem2: center dimension");
  if (concave_part && concave_part->dim() != n)
    throw std::invalid_argument("verify_theorem2: concave part dimension");

  const double tol = 1e-9 * plan.tol_scale;
  Theorem2Report rep;
  rep.witness_dominative = Vec(n);
  rep.witness_p_laplace = Vec(n);

  // Radial precondition, checked on a log-spaced ladder of radii.
  std::vector<double> radii;
  for (int i = 0; i < 64; ++i)
    radii.push_back(std::exp(std::log(1e-2) + (std::log(10.0) - std::log(1e-2)) * i / 63.0));
  for (const auto& [u, center] : profiles) {
    RadialEquivalenceReport r = verify_radial_equivalence(u, rf, radii, plan.tol_scale);
    rep.preconditions_ok = rep.preconditions_ok && r.pass;
    rep.profile_reports.push_back(std::move(r));
  }

  std::vector<std::pair<double, ScalarField>> terms;
  for (const auto& [u, center] : profiles)
    terms.emplace_back(1.0, ScalarField::radial_profile(u, center));
  if (concave_part) terms.emplace_back(1.0, *concave_part);
  const ScalarField sum = ScalarField::weighted_sum(terms);

  Rng rng(plan.seed);
  double max_dom = -std::numeric_limits<double>::infinity();
  double max_pl = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < plan.count; ++i) {
    const Point x = rng.point_in_box(n, plan.half_width);
    if (distance_to_singularity(sum, x) < plan.exclusion_radius) {
      ++rep.skipped_singular;
      continue;
    }
    try {
      if (concave_part) {
        const Jet2 jk = eval_jet(*concave_part, x);
        if (largest_eig(jk.hessian).first > 1e-12 * plan.tol_scale)
          rep.preconditions_ok = false;
      }
      const Jet2 j = eval_jet(sum, x);
      const double dv = dominative(j, p);
      const double pl = p_laplacian(j, p);
      if (dv > max_dom) {
        max_dom = dv;
        rep.witness_dominative = x;
      }
      if (pl > max_pl) {
        max_pl = pl;
        rep.witness_p_laplace = x;
      }
      ++rep.samples_checked;
    } catch (const SingularityError&) {
      ++rep.skipped_singular;
    }
  }
  rep.max_dominative = rep.samples_checked > 0 ? max_dom : 0.0;
  rep.max_p_laplace = rep.samples_checked > 0 ? max_pl : 0.0;
  rep.pass = rep.preconditions_ok && rep.samples_checked > 0 && rep.max_dominative <= tol &&
             rep.max_p_laplace <= tol;
  return rep;
}

}  // namespace dplap
