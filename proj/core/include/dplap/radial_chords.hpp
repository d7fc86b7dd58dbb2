#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "dplap/fields.hpp"
#include "dplap/operators.hpp"
#include "dplap/profile.hpp"
#include "dplap/superposition.hpp"

namespace dplap {

// Chord machinery for decreasing radial profiles. The comparison function
// between two radii 0 < a < b is the scaled fundamental profile through
// (a, U(a)) and (b, U(b)):
//   H_ab(r) = C_ab (W(r) - W(b)) + U(b),
//   C_ab    = (U(a) - U(b)) / (W(a) - W(b)) >= 0,
// which sits below U inside (a, b) and above outside when U is radially
// p-superharmonic. The chord constant grows in both endpoints, so its
// one-sided limits at b order as C_b^- <= C_b^+.

struct ChordData {
  double a, b;
  double c_ab;                // chord constant
  double h_c1, h_c2;          // H_ab(r) = h_c1 W(r) + h_c2
};

// C_ab for 0 < a < b. Both profile values must be finite there (automatic
// for positive radii of the supported shapes).
double chord_constant(const RadialProfile& u, double a, double b, const RadialFundamental& rf);

ChordData chord_profile(const RadialProfile& u, double a, double b, const RadialFundamental& rf);

// One-sided limits (C_b^-, C_b^+) of the chord constant at b > 0, via the
// geometric sequences a_j = b(1 - 2^-j), c_j = b(1 + 2^-j), j = 1..40.
// Stops on a Cauchy criterion (increments < 1e-8 three times in a row) or
// when the predicted cancellation noise of the difference quotient passes
// 1e-9, and returns Richardson-extrapolated values. Monotonicity of the
// sequences is asserted up to the noise allowance; a violation beyond it
// throws ProfileError, since it contradicts radial p-superharmonicity.
std::pair<double, double> one_sided_chord_limits(const RadialProfile& u, double b,
                                                 const RadialFundamental& rf);

// The radial comparison field touching u from above at radius b:
//   b > 0: h(r) = C_b (W(r) - W(b)) + U(b) with C_b the midpoint of the
//          one-sided chord limits;
//   b = 0: the constant h = U(0) (requires U finite at the origin, else
//          SingularityError).
// Returned as a radial field (k = n) centered at the origin.
CylFundamental touching_from_above(const RadialProfile& u, double b, const RadialFundamental& rf);

struct KinkCheck {
  double radius;
  double c_minus, c_plus;
  bool ordered;      // c_minus <= c_plus (+ tolerance)
  bool touch_ok;     // touching field stays >= U on sampled radii
};

struct RadialEquivalenceReport {
  bool pass = false;
  int radii_checked = 0;
  int skipped_kinks = 0;
  double max_residual = 0.0;     // max of the profile dominative value
  double witness_radius = 0.0;
  std::vector<KinkCheck> kinks;
};

// Checks that a radially p-superharmonic profile satisfies the dominative
// sign condition: at each sampled smooth radius the profile form of the
// dominative operator is <= 1e-9 * tol_scale, and at each kink the chord
// limits order correctly and the touching field stays above U.
RadialEquivalenceReport verify_radial_equivalence(const RadialProfile& u,
                                                  const RadialFundamental& rf,
                                                  const std::vector<double>& radii,
                                                  double tol_scale = 1.0);

struct Theorem2Report {
  bool preconditions_ok = true;     // each profile radially verified, K concave
  std::vector<RadialEquivalenceReport> profile_reports;
  int samples_checked = 0;
  int skipped_singular = 0;
  double max_dominative = 0.0;
  double max_p_laplace = 0.0;
  Point witness_dominative;
  Point witness_p_laplace;
  bool pass = false;
};

// Sum of rotated decreasing profiles plus a concave part: verifies each
// profile radially (via verify_radial_equivalence on log-spaced radii),
// checks the concave part's Hessian at the samples, then samples the full
// sum for dominative <= tol and p_laplacian <= tol, skipping and counting
// samples near poles and kink spheres.
Theorem2Report verify_theorem2(const std::vector<std::pair<RadialProfile, Point>>& profiles,
                               const std::optional<ScalarField>& concave_part,
                               const RadialFundamental& rf, const SamplingPlan& plan);

}  // namespace dplap
