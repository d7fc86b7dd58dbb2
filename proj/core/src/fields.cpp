#include "dplap/fields.hpp"

#include <cmath>
#include <limits>

#include "dplap/errors.hpp"

namespace dplap {

namespace detail {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_point(const FieldNode& f, const Point& x, const char* who) {
  if (x.size() != f.dim())
    throw std::invalid_argument(std::string(who) + ": point dimension mismatch");
}
}  // namespace

QuadraticNode::QuadraticNode(SymMatrix a_, Vec b_, double c_)
    : a(std::move(a_)), b(std::move(b_)), c(c_) {
  if (a.size() != b.size())
    throw std::invalid_argument("ScalarField::quadratic: A/b dimension mismatch");
  if (!std::isfinite(c)) throw std::invalid_argument("ScalarField::quadratic: bad constant");
}
double QuadraticNode::value(const Point& x) const {
  check_point(*this, x, "quadratic");
  return 0.5 * a.quad(x) + b.dot(x) + c;
}
Jet2 QuadraticNode::jet(const Point& x) const {
  check_point(*this, x, "quadratic");
  return Jet2(value(x), a * x + b, a);
}
double QuadraticNode::singular_distance(const Point&) const { return kInf; }

AffineNode::AffineNode(Vec a_, double b_) : a(std::move(a_)), b(b_) {
  if (!std::isfinite(b)) throw std::invalid_argument("ScalarField::affine: bad constant");
}
double AffineNode::value(const Point& x) const {
  check_point(*this, x, "affine");
  return a.dot(x) + b;
}
Jet2 AffineNode::jet(const Point& x) const {
  check_point(*this, x, "affine");
  return Jet2(value(x), a, SymMatrix(a.size()));
}
double AffineNode::singular_distance(const Point&) const { return kInf; }

RadialProfileNode::RadialProfileNode(RadialProfile u_, Point center_)
    : u(std::move(u_)), center(std::move(center_)) {}
double RadialProfileNode::value(const Point& x) const {
  check_point(*this, x, "radial_profile");
  return u.value((x - center).norm());
}
Jet2 RadialProfileNode::jet(const Point& x) const {
  check_point(*this, x, "radial_profile");
  const int n = dim();
  if (u.is_constant()) return Jet2(u.value(1.0), Vec(n), SymMatrix(n));
  const Vec d = x - center;
  const double r = d.norm();
  if (r == 0.0) throw SingularityError("radial_profile: jet at the center");
  // derivative() rejects kink radii, which is exactly the wanted behavior.
  const double du = u.derivative(r);
  const double d2u = u.second_derivative(r);
  const Vec rhat = d * (1.0 / r);
  const double tang = du / r;
  SymMatrix h(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      h.set(i, j, (d2u - tang) * rhat[i] * rhat[j] + (i == j ? tang : 0.0));
  return Jet2(u.value(r), du * rhat, h);
}
double RadialProfileNode::singular_distance(const Point& x) const {
  if (u.is_constant()) return kInf;
  const double r = (x - center).norm();
  double d = r;  // center: pole or potential gradient jump
  for (double k : u.kink_radii()) d = std::min(d, std::abs(r - k));
  return d;
}

CylNode::CylNode(CylFundamental cf_, PValue p_) : cf(std::move(cf_)), p(std::move(p_)) {}
double CylNode::value(const Point& x) const {
  check_point(*this, x, "cylindrical");
  if (cf.c1 == 0.0) return cf.c2;
  const double r = (cf.q.transposed() * (x - cf.x0)).norm();
  if (r == 0.0) throw SingularityError("cylindrical: value on the singular axis");
  return cf.c1 * W(RadialFundamental(cf.k, p), r) + cf.c2;
}
Jet2 CylNode::jet(const Point& x) const { return cyl_jet(cf, x, p); }
double CylNode::singular_distance(const Point& x) const {
  if (cf.c1 == 0.0) return kInf;
  return (cf.q.transposed() * (x - cf.x0)).norm();
}

ComposedNode::ComposedNode(ScalarField inner_, Isometry t_)
    : inner(std::move(inner_)), t(std::move(t_)) {
  if (inner.dim() != t.dim())
    throw std::invalid_argument("compose_isometry: field/isometry dimension mismatch");
}
double ComposedNode::value(const Point& x) const {
  check_point(*this, x, "composed");
  return eval_value(inner, t.apply(x));
}
Jet2 ComposedNode::jet(const Point& x) const {
  check_point(*this, x, "composed");
  const Jet2 j = eval_jet(inner, t.apply(x));
  // Chain rule for a rigid motion: grad(u o T) = Q grad u(Tx),
  // H(u o T) = Q H(Tx) Q^T.
  return Jet2(j.value, t.q * j.gradient, conjugated(t.q, j.hessian));
}
double ComposedNode::singular_distance(const Point& x) const {
  return distance_to_singularity(inner, t.apply(x));
}

SumNode::SumNode(std::vector<std::pair<double, ScalarField>> terms_)
    : terms(std::move(terms_)) {
  if (terms.empty()) throw std::invalid_argument("weighted_sum: no terms");
  for (const auto& [c, f] : terms) {
    if (!std::isfinite(c)) throw std::invalid_argument("weighted_sum: bad coefficient");
    if (f.dim() != terms.front().second.dim())
      throw std::invalid_argument("weighted_sum: term dimension mismatch");
  }
}
int SumNode::dim() const { return terms.front().second.dim(); }
double SumNode::value(const Point& x) const {
  double s = 0.0;
  for (const auto& [c, f] : terms) s += c * eval_value(f, x);
  return s;
}
Jet2 SumNode::jet(const Point& x) const {
  Jet2 out = Jet2::zero(dim());
  for (const auto& [c, f] : terms) out += c * eval_jet(f, x);
  return out;
}
double SumNode::singular_distance(const Point& x) const {
  double d = kInf;
  for (const auto& [c, f] : terms) d = std::min(d, distance_to_singularity(f, x));
  return d;
}

ReflectedNode::ReflectedNode(ScalarField inner_, Vec axis_)
    : inner(std::move(inner_)),
      axis(axis_.normalized()),
      t(reflection_about_line(axis_)) {
  if (inner.dim() != t.dim())
    throw std::invalid_argument("reflect_through: field/axis dimension mismatch");
}
double ReflectedNode::value(const Point& x) const {
  check_point(*this, x, "reflected");
  return eval_value(inner, t.apply(x));
}
Jet2 ReflectedNode::jet(const Point& x) const {
  check_point(*this, x, "reflected");
  const Jet2 j = eval_jet(inner, t.apply(x));
  return Jet2(j.value, t.q * j.gradient, conjugated(t.q, j.hessian));
}
double ReflectedNode::singular_distance(const Point& x) const {
  return distance_to_singularity(inner, t.apply(x));
}

}  // namespace detail

ScalarField ScalarField::quadratic(SymMatrix a, Vec b, double c) {
  return ScalarField(std::make_shared<detail::QuadraticNode>(std::move(a), std::move(b), c));
}
ScalarField ScalarField::affine(Vec a, double b) {
  return ScalarField(std::make_shared<detail::AffineNode>(std::move(a), b));
}
ScalarField ScalarField::radial_profile(RadialProfile u, Point center) {
  return ScalarField(
      std::make_shared<detail::RadialProfileNode>(std::move(u), std::move(center)));
}
ScalarField ScalarField::cylindrical(CylFundamental cf, PValue p) {
  return ScalarField(std::make_shared<detail::CylNode>(std::move(cf), std::move(p)));
}
ScalarField ScalarField::weighted_sum(std::vector<std::pair<double, ScalarField>> terms) {
  return ScalarField(std::make_shared<detail::SumNode>(std::move(terms)));
}

int ScalarField::dim() const { return node_->dim(); }

ScalarField compose_isometry(const ScalarField& f, const Isometry& t) {
  return ScalarField(std::make_shared<detail::ComposedNode>(f, t));
}

Isometry reflection_about_line(const Vec& y) {
  const double len = y.norm();
  if (std::abs(len - 1.0) > 1e-12)
    throw std::domain_error("reflection_about_line: axis must be a unit vector (|y| = " +
                            std::to_string(len) + ")");
  const Vec u = y * (1.0 / len);  // strip the residual so R^T R = I holds tightly
  const int n = u.size();
  Mat r(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r(i, j) = 2.0 * u[i] * u[j] - (i == j ? 1.0 : 0.0);
  return Isometry(std::move(r), Vec(n));
}

ScalarField reflect_through(const ScalarField& f, const Vec& axis) {
  return ScalarField(std::make_shared<detail::ReflectedNode>(f, axis));
}

Jet2 eval_jet(const ScalarField& f, const Point& x) { return f.node().jet(x); }
double eval_value(const ScalarField& f, const Point& x) { return f.node().value(x); }
double distance_to_singularity(const ScalarField& f, const Point& x) {
  return f.node().singular_distance(x);
}

Jet2 fd_jet(const ScalarField& f, const Point& x, double h) {
  const int n = f.dim();
  if (x.size() != n) throw std::invalid_argument("fd_jet: point dimension mismatch");
  if (h <= 0.0) h = 1e-4 * (1.0 + x.norm());

  const auto at = [&](const Point& y) { return eval_value(f, y); };
  const double f0 = at(x);

  Jet2 out = Jet2::zero(n);
  out.value = f0;
  for (int i = 0; i < n; ++i) {
    Point xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    const double fp = at(xp), fm = at(xm);
    out.gradient[i] = (fp - fm) / (2.0 * h);
    out.hessian.set(i, i, (fp - 2.0 * f0 + fm) / (h * h));
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Point xpp = x, xpm = x, xmp = x, xmm = x;
      xpp[i] += h;
      xpp[j] += h;
      xpm[i] += h;
      xpm[j] -= h;
      xmp[i] -= h;
      xmp[j] += h;
      xmm[i] -= h;
      xmm[j] -= h;
      out.hessian.set(i, j, (at(xpp) - at(xpm) - at(xmp) + at(xmm)) / (4.0 * h * h));
    }
  return out;
}

}  // namespace dplap
