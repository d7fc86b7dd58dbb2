#include "dplap/superposition.hpp"

#include <cmath>
#include <limits>

#include "dplap/errors.hpp"
#include "dplap/rng.hpp"

namespace dplap {

CrandallSum::CrandallSum(int n_, PValue p_, std::vector<Term> terms_,
                         std::optional<ScalarField> concave)
    : n(n_), p(std::move(p_)), terms(std::move(terms_)), concave_part(std::move(concave)) {
  if (n < 2 || n > kMaxDim) throw std::invalid_argument("CrandallSum: dimension outside [2, 16]");
  if (terms.empty()) throw std::invalid_argument("CrandallSum: no terms");
  for (const Term& t : terms) {
    if (!std::isfinite(t.c) || t.c < 0.0)
      throw std::invalid_argument("CrandallSum: coefficients must be finite and >= 0");
    if (t.pole.size() != n) throw std::invalid_argument("CrandallSum: pole dimension mismatch");
  }
  if (concave_part && concave_part->dim() != n)
    throw std::invalid_argument("CrandallSum: concave part dimension mismatch");
}

ScalarField CrandallSum::as_field() const {
  std::vector<std::pair<double, ScalarField>> parts;
  parts.reserve(terms.size() + 1);
  for (const Term& t : terms)
    parts.emplace_back(1.0, ScalarField::cylindrical(CylFundamental::radial(t.pole, t.c), p));
  if (concave_part) parts.emplace_back(1.0, *concave_part);
  return ScalarField::weighted_sum(std::move(parts));
}

Jet2 crandall_sum_jet(const CrandallSum& s, const Point& x) {
  if (x.size() != s.n) throw std::invalid_argument("crandall_sum_jet: point dimension mismatch");
  Jet2 out = Jet2::zero(s.n);
  for (const CrandallSum::Term& t : s.terms)
    out += cyl_jet(CylFundamental::radial(t.pole, t.c), x, s.p);
  if (s.concave_part) out += eval_jet(*s.concave_part, x);
  return out;
}

SuperpositionReport verify_theorem1_i(const std::vector<ScalarField>& fields, const PValue& p,
                                      const SamplingPlan& plan) {
  if (fields.empty()) throw std::invalid_argument("verify_theorem1_i: no fields");
  const int n = fields.front().dim();
  for (const ScalarField& f : fields)
    if (f.dim() != n) throw std::invalid_argument("verify_theorem1_i: dimension mismatch");
  if (plan.count < 1) throw std::invalid_argument("verify_theorem1_i: sample count must be >= 1");

  const double tol = 1e-9 * plan.tol_scale;
  Rng rng(plan.seed);

  SuperpositionReport rep;
  rep.witness_dominative = Vec(n);
  rep.witness_p_laplace = Vec(n);
  double max_dom = -std::numeric_limits<double>::infinity();
  double max_pl = -std::numeric_limits<double>::infinity();

  for (int i = 0; i < plan.count; ++i) {
    const Point x = rng.point_in_box(n, plan.half_width);
    bool excluded = false;
    for (const ScalarField& f : fields)
      if (distance_to_singularity(f, x) < plan.exclusion_radius) {
        excluded = true;
        break;
      }
    if (excluded) {
      ++rep.skipped_singular;
      continue;
    }
    try {
      Jet2 sum = Jet2::zero(n);
      for (size_t k = 0; k < fields.size(); ++k) {
        const Jet2 jk = eval_jet(fields[k], x);
        const double dk = dominative(jk, p);
        if (dk > tol) {
          rep.preconditions_ok = false;
          rep.violations.push_back({static_cast<int>(k), x, dk});
        }
        sum += jk;
      }
      const double dv = dominative(sum, p);
      const double pl = p_laplacian(sum, p);
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
      // The exclusion test is conservative, not exact; a stencil point can
      // still land on a kink sphere. Those samples are skipped and counted.
      ++rep.skipped_singular;
    }
  }

  rep.max_dominative = rep.samples_checked > 0 ? max_dom : 0.0;
  rep.max_p_laplace = rep.samples_checked > 0 ? max_pl : 0.0;
  rep.pass = rep.preconditions_ok && rep.samples_checked > 0 && rep.max_dominative <= tol &&
             rep.max_p_laplace <= tol;
  return rep;
}

namespace {

struct BasePointData {
  Jet2 jet;
  double dom;  // dominative(u)(x0), required positive
  Vec xi;      // unit top eigenvector
};

BasePointData analyze_base_point(const ScalarField& u, const Point& x0, const PValue& p,
                                 const char* who) {
  BasePointData d{eval_jet(u, x0), 0.0, Vec(x0.size())};
  const auto [lmax, xi] = largest_eig(d.jet.hessian);
  d.xi = xi;
  d.dom = p.is_infinite() ? lmax : (p.value() - 2.0) * lmax + d.jet.hessian.trace();
  if (!(d.dom > 0.0))
    throw std::domain_error(std::string(who) + ": dominative(u)(x0) = " + std::to_string(d.dom) +
                            " is not positive");
  return d;
}

double rho_at(const BasePointData& d, int n, const PValue& p, double s) {
  const Vec z = d.jet.gradient - s * d.xi;
  const double zz = z.norm2();
  if (zz == 0.0)
    throw SearchError("counterexample_fundsol: offset s places the pole at x0 itself");
  const double align = z.dot(d.xi);
  const double factor =
      p.is_infinite() ? 1.0 : (p.value() - 2.0) * ((n + p.value() - 2.0) / (p.value() - 1.0));
  return factor * (align * align / zz - 1.0);
}

}  // namespace

double fundsol_residual(const ScalarField& u, const Point& x0, const PValue& p, double s) {
  if (!(s > 0.0)) throw std::domain_error("fundsol_residual: s must be positive");
  const BasePointData d = analyze_base_point(u, x0, p, "fundsol_residual");
  return rho_at(d, u.dim(), p, s);
}

Counterexample counterexample_fundsol(const ScalarField& u, const Point& x0, const PValue& p,
                                      double s) {
  if (!(s > 0.0)) throw std::domain_error("counterexample_fundsol: s must be positive");
  const int n = u.dim();
  const BasePointData d = analyze_base_point(u, x0, p, "counterexample_fundsol");
  const double rho = rho_at(d, n, p, s);
  const double witness = d.dom + rho;
  if (!(witness > 0.0))
    throw SearchError("counterexample_fundsol: alignment residual " + std::to_string(rho) +
                      " still cancels dominative(u)(x0); needs a larger s");

  // Pole at y_s = x0 - grad u(x0) + s xi, scaled so the gradients of u and
  // of the perturbation add up to s xi at x0.
  const Vec z = d.jet.gradient - s * d.xi;
  const Point y = x0 - z;
  const double r = z.norm();
  const double cs = -r / W_prime(RadialFundamental(n, p), r);
  ScalarField v = ScalarField::cylindrical(CylFundamental::radial(y, cs), p);

  return Counterexample{Counterexample::Kind::FundamentalSolution,
                        x0,
                        u,
                        std::move(v),
                        x0,
                        witness,
                        /*witness_normalized=*/true,
                        {{s, rho}}};
}

Counterexample counterexample_fundsol_search(const ScalarField& u, const Point& x0,
                                             const PValue& p) {
  const int n = u.dim();
  const BasePointData d = analyze_base_point(u, x0, p, "counterexample_fundsol");
  std::vector<std::pair<double, double>> trace;
  const double cap = std::ldexp(1.0, 40);
  for (double s = 8.0; s <= cap; s *= 2.0) {
    const double rho = rho_at(d, n, p, s);
    trace.push_back({s, rho});
    // Stop once the residual eats less than half the positive margin.
    if (d.dom + rho > 0.5 * d.dom) {
      Counterexample ce = counterexample_fundsol(u, x0, p, s);
      ce.residual_trace = std::move(trace);
      return ce;
    }
  }
  throw SearchError("counterexample_fundsol: residual did not decay below dominative(u)(x0)/2 "
                    "by s = 2^40");
}

Counterexample counterexample_linear(const ScalarField& u, const Point& x0, const PValue& p) {
  const BasePointData d = analyze_base_point(u, x0, p, "counterexample_linear");
  const Vec a = d.xi - d.jet.gradient;
  return Counterexample{Counterexample::Kind::Linear,
                        x0,
                        u,
                        ScalarField::affine(a, 0.0),
                        x0,
                        d.dom,
                        /*witness_normalized=*/false,
                        {}};
}

Counterexample counterexample_reflection(const ScalarField& u, const Point& x0, const PValue& p,
                                         double eps) {
  if (!(eps > 0.0)) throw std::domain_error("counterexample_reflection: eps must be positive");
  const int n = u.dim();

  // Work in coordinates where the base point is the origin.
  const ScalarField u0 =
      x0.norm() == 0.0 ? u : compose_isometry(u, Isometry(Mat::identity(n), -1.0 * x0));
  const Point origin(n);
  const BasePointData d = analyze_base_point(u0, origin, p, "counterexample_reflection");
  ScalarField v = reflect_through(u0, d.xi);
  const double alpha = p.alpha();

  // p-Laplacian of u0 + u0 o R restricted to the fixed line of R:
  // 2 (2 |grad u0(t xi) . xi|)^alpha ((p-2) xi.H xi + tr H), the bracket
  // collapsing to xi.H xi at p = inf.
  const auto witness_at = [&](double t) -> double {
    const Jet2 jt = (t == 0.0) ? d.jet : eval_jet(u0, t * d.xi);
    const double gdot = jt.gradient.dot(d.xi);
    if (gdot == 0.0) return -1.0;
    const double quad = d.xi.dot(jt.hessian * d.xi);
    const double bracket =
        p.is_infinite() ? quad : (p.value() - 2.0) * quad + jt.hessian.trace();
    if (!(bracket > 0.0)) return -1.0;
    return 2.0 * std::pow(2.0 * std::abs(gdot), alpha) * bracket;
  };

  const double w0 = witness_at(0.0);
  if (w0 > 1e-6)
    return Counterexample{Counterexample::Kind::Reflection, x0,  u0, std::move(v),
                          origin,                           w0,  false, {}};

  // grad u0(0) is orthogonal to the line (typically zero), so step out
  // along it: continuity keeps the bracket positive for small t while the
  // gradient picks up a component s xi. Scan from eps downward.
  constexpr int kScanPoints = 64;
  for (int i = 0; i < kScanPoints; ++i) {
    const double t = eps * std::pow(10.0, -6.0 * i / (kScanPoints - 1));
    const double w = witness_at(t);
    if (w > 1e-6)
      return Counterexample{Counterexample::Kind::Reflection, x0, u0, std::move(v),
                            t * d.xi,                         w,  false, {}};
  }
  throw SearchError("counterexample_reflection: no witness on (0, " + std::to_string(eps) +
                    "] along the top eigendirection; needs a smaller step");
}

}  // namespace dplap
