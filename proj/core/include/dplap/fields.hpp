#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "dplap/fundsol.hpp"
#include "dplap/jet.hpp"
#include "dplap/linalg.hpp"
#include "dplap/profile.hpp"
#include "dplap/pvalue.hpp"

namespace dplap {

// Rigid motion x -> Q^T (x - x0) with Q orthogonal. Applied on the right
// of a field it translates by x0 and rotates by Q.
struct Isometry {
  Mat q;
  Point x0;

  Isometry(Mat q_, Point x0_) : q(std::move(q_)), x0(std::move(x0_)) {
    if (q.rows() != q.cols()) throw std::invalid_argument("Isometry: Q must be square");
    if (q.rows() != x0.size()) throw std::invalid_argument("Isometry: Q/x0 dimension mismatch");
    if (q.orthonormality_defect() > 1e-12)
      throw std::invalid_argument("Isometry: Q is not orthogonal");
  }

  static Isometry translation(const Point& x0) {
    return Isometry(Mat::identity(x0.size()), x0);
  }

  Point apply(const Point& x) const { return q.transposed() * (x - x0); }
  int dim() const { return x0.size(); }
};

namespace detail {
struct FieldNode;
}

// Immutable scalar field u : R^n -> R with an exact second-order jet at
// every smooth point. Copies share the underlying node, so fields are
// cheap to pass around and safe to evaluate concurrently.
class ScalarField {
 public:
  // u(x) = 1/2 x^T A x + b.x + c
  static ScalarField quadratic(SymMatrix a, Vec b, double c);
  // u(x) = a.x + b
  static ScalarField affine(Vec a, double b);
  // u(x) = U(|x - center|)
  static ScalarField radial_profile(RadialProfile u, Point center);
  // u(x) = c1 W_{k,p}(|Q^T(x - x0)|) + c2; p is fixed at construction.
  static ScalarField cylindrical(CylFundamental cf, PValue p);
  // sum of coefficient * field
  static ScalarField weighted_sum(std::vector<std::pair<double, ScalarField>> terms);

  int dim() const;
  const detail::FieldNode& node() const { return *node_; }

 private:
  friend ScalarField compose_isometry(const ScalarField&, const Isometry&);
  friend ScalarField reflect_through(const ScalarField&, const Vec&);
  explicit ScalarField(std::shared_ptr<const detail::FieldNode> node)
      : node_(std::move(node)) {}
  std::shared_ptr<const detail::FieldNode> node_;
};

// u o T as a field. T must act on u's space.
ScalarField compose_isometry(const ScalarField& f, const Isometry& t);

// Reflection matrix about the line through the unit vector y: R = 2yy^T - I.
// Rejects y with | |y| - 1 | > 1e-12, then normalizes the residual away.
Isometry reflection_about_line(const Vec& y);

// u o R for the reflection about the line through y (a distinct field
// shape so the axis survives serialization).
ScalarField reflect_through(const ScalarField& f, const Vec& axis);

// Exact jet at x. Throws SingularityError at poles, on cylinder axes and
// at kink spheres of radial-profile terms.
Jet2 eval_jet(const ScalarField& f, const Point& x);

// Value only (same domain as eval_jet).
double eval_value(const ScalarField& f, const Point& x);

// Distance from x to the singular set of f; +inf for fields smooth
// everywhere. Sampling harnesses use this to skip excluded balls.
double distance_to_singularity(const ScalarField& f, const Point& x);

// Central-difference jet with step h (h <= 0 picks 1e-4 * (1 + |x|)).
// Second-order accurate; the stencil evaluates values only, so this is an
// independent check on the analytic jets. Stencil points falling on a
// singularity propagate the SingularityError.
Jet2 fd_jet(const ScalarField& f, const Point& x, double h = 0.0);

namespace detail {

struct FieldNode {
  virtual ~FieldNode() = default;
  virtual int dim() const = 0;
  virtual double value(const Point& x) const = 0;
  virtual Jet2 jet(const Point& x) const = 0;
  virtual double singular_distance(const Point& x) const = 0;
};

struct QuadraticNode final : FieldNode {
  SymMatrix a;
  Vec b;
  double c;
  QuadraticNode(SymMatrix a_, Vec b_, double c_);
  int dim() const override { return b.size(); }
  double value(const Point& x) const override;
  Jet2 jet(const Point& x) const override;
  double singular_distance(const Point&) const override;
};

struct AffineNode final : FieldNode {
  Vec a;
  double b;
  AffineNode(Vec a_, double b_);
  int dim() const override { return a.size(); }
  double value(const Point& x) const override;
  Jet2 jet(const Point& x) const override;
  double singular_distance(const Point&) const override;
};

struct RadialProfileNode final : FieldNode {
  RadialProfile u;
  Point center;
  RadialProfileNode(RadialProfile u_, Point center_);
  int dim() const override { return center.size(); }
  double value(const Point& x) const override;
  Jet2 jet(const Point& x) const override;
  double singular_distance(const Point& x) const override;
};

struct CylNode final : FieldNode {
  CylFundamental cf;
  PValue p;
  CylNode(CylFundamental cf_, PValue p_);
  int dim() const override { return cf.ambient_dim(); }
  double value(const Point& x) const override;
  Jet2 jet(const Point& x) const override;
  double singular_distance(const Point& x) const override;
};

struct ComposedNode final : FieldNode {
  ScalarField inner;
  Isometry t;
  ComposedNode(ScalarField inner_, Isometry t_);
  int dim() const override { return t.dim(); }
  double value(const Point& x) const override;
  Jet2 jet(const Point& x) const override;
  double singular_distance(const Point& x) const override;
};

struct SumNode final : FieldNode {
  std::vector<std::pair<double, ScalarField>> terms;
  explicit SumNode(std::vector<std::pair<double, ScalarField>> terms_);
  int dim() const override;
  double value(const Point& x) const override;
  Jet2 jet(const Point& x) const override;
  double singular_distance(const Point& x) const override;
};

struct ReflectedNode final : FieldNode {
  ScalarField inner;
  Vec axis;     // unit vector spanning the fixed line
  Isometry t;   // the reflection as an isometry
  ReflectedNode(ScalarField inner_, Vec axis_);
  int dim() const override { return t.dim(); }
  double value(const Point& x) const override;
  Jet2 jet(const Point& x) const override;
  double singular_distance(const Point& x) const override;
};

}  // namespace detail

}  // namespace dplap
