#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dplap/fields.hpp"
#include "dplap/operators.hpp"

namespace dplap {

// Nonnegative combination of translated radial fundamental fields plus an
// optional concave part: u = sum_i c_i w(x - y_i) + K(x).
struct CrandallSum {
  struct Term {
    double c;     // >= 0
    Point pole;
  };
  int n;
  PValue p;
  std::vector<Term> terms;
  std::optional<ScalarField> concave_part;

  CrandallSum(int n_, PValue p_, std::vector<Term> terms_,
              std::optional<ScalarField> concave = std::nullopt);

  // The same sum as a generic field (used for cross-checks and reports).
  ScalarField as_field() const;
};

// Exact jet of the sum at x; SingularityError at any pole.
Jet2 crandall_sum_jet(const CrandallSum& s, const Point& x);

// How a verification harness samples: count points uniform in the box
// [-half_width, half_width]^n, skipping points within exclusion_radius of
// any singular set. Tolerances scale with tol_scale.
struct SamplingPlan {
  int count = 500;
  double half_width = 3.0;
  double exclusion_radius = 1e-2;
  std::uint64_t seed = 20240617;
  double tol_scale = 1.0;
};

struct PreconditionViolation {
  int field_index;
  Point at;
  double dominative_value;
};

struct SuperpositionReport {
  bool preconditions_ok = true;
  std::vector<PreconditionViolation> violations;
  int samples_checked = 0;
  int skipped_singular = 0;
  double max_dominative = 0.0;  // over samples, of the sum
  double max_p_laplace = 0.0;
  Point witness_dominative;
  Point witness_p_laplace;
  bool pass = false;
};

// Checks that a sum of dominative p-superharmonic fields stays dominative
// p-superharmonic: every field must satisfy dominative <= tol at each
// sample (else a precondition violation is recorded), and then the sum
// must satisfy dominative <= tol and p_laplacian <= tol. tol = 1e-9 *
// tol_scale.
SuperpositionReport verify_theorem1_i(const std::vector<ScalarField>& fields, const PValue& p,
                                      const SamplingPlan& plan);

// Witness that the dominative sign condition is sharp: given a field with
// dominative(u)(x0) > 0, each constructor builds a perturbation v (an
// affine function, a far-away fundamental translate, or a reflected copy
// of u) whose own p-Laplacian is <= 0 near x0, yet the p-Laplacian of
// u + v comes out positive at witness_point. So u + v fails to be
// p-superharmonic even though each summand is.
struct Counterexample {
  enum class Kind { Linear, FundamentalSolution, Reflection };

  Kind kind;
  Point base_point;          // the requested x0, in the input field's coordinates
  ScalarField base;          // possibly a translated copy of the input field;
                             // witness_point is in base's coordinates
  ScalarField perturbation;  // v; the counterexample sum is base + v
  Point witness_point;
  double witness_value;      // the (normalized, if flagged) p-Laplacian of the sum
  bool witness_normalized;   // true: compare against normalized_p_laplacian
  std::vector<std::pair<double, double>> residual_trace;  // (s, rho(s)), fundsol kind

  ScalarField sum_field() const {
    return ScalarField::weighted_sum({{1.0, base}, {1.0, perturbation}});
  }
};

// v(x) = a.x with a = xi_u - grad u(x0): the perturbed sum has unit
// gradient at x0 pointing along the top eigenvector, so its p-Laplacian
// equals dominative(u)(x0) > 0 there. Requires dominative(u)(x0) > 0.
Counterexample counterexample_linear(const ScalarField& u, const Point& x0, const PValue& p);

// The alignment defect rho(s) <= 0 of the far-pole perturbation with
// offset s: the normalized p-Laplacian of the perturbed sum at x0 is
// dominative(u)(x0) + rho(s), and rho(s) -> 0 as s grows.
double fundsol_residual(const ScalarField& u, const Point& x0, const PValue& p, double s);

// v = c_s w(x - y_s) with the pole y_s placed so the gradients cancel at
// x0 up to s xi_u. Throws SearchError when rho(s) has not decayed enough
// at the given s (witness would not be positive).
Counterexample counterexample_fundsol(const ScalarField& u, const Point& x0, const PValue& p,
                                      double s);

// Doubles s from 8 until the witness is positive with margin; records the
// visited (s, rho(s)) trace. Throws SearchError if s reaches 2^40.
Counterexample counterexample_fundsol_search(const ScalarField& u, const Point& x0,
                                             const PValue& p);

// v = u o R for the reflection R about the line through xi_u (after
// translating x0 to the origin). If grad u(0) . xi_u != 0 the witness sits
// at the origin; otherwise scans t in (0, eps] along the line for a point
// where the perturbed sum has positive p-Laplacian. Throws SearchError
// when the scan exhausts eps.
Counterexample counterexample_reflection(const ScalarField& u, const Point& x0, const PValue& p,
                                         double eps = 1e-2);

}  // namespace dplap
