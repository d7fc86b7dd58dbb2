#include "dplap/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "dplap/errors.hpp"
#include "dplap/operators.hpp"
#include "dplap/radial_chords.hpp"
#include "dplap/rng.hpp"

namespace dplap {

namespace {

using ojson = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ScenarioError("scenario: " + where + ": " + what);
}

const ojson& require(const ojson& o, const char* key, const std::string& where) {
  if (!o.is_object()) fail(where, "expected an object");
  auto it = o.find(key);
  if (it == o.end()) fail(where, std::string("missing key '") + key + "'");
  return *it;
}

double get_num(const ojson& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

int get_int(const ojson& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<int>();
}

std::string get_str(const ojson& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

double opt_num(const ojson& o, const char* key, double dflt, const std::string& where) {
  if (!o.is_object()) fail(where, "expected an object");
  auto it = o.find(key);
  return it == o.end() ? dflt : get_num(*it, where + "." + key);
}

Vec get_vec(const ojson& j, int n, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    fail(where, "expected an array of " + std::to_string(n) + " numbers");
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = get_num(j[i], where);
  return v;
}

Vec opt_vec(const ojson& o, const char* key, int n, const std::string& where) {
  auto it = o.find(key);
  return it == o.end() ? Vec(n) : get_vec(*it, n, where + "." + key);
}

// Symmetric matrix as an array of n rows; asymmetric input is rejected
// rather than silently symmetrized.
SymMatrix get_symmatrix(const ojson& j, int n, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    fail(where, "expected an array of " + std::to_string(n) + " rows");
  SymMatrix m(n);
  for (int i = 0; i < n; ++i) {
    const Vec row = get_vec(j[i], n, where);
    for (int k = 0; k <= i; ++k) {
      if (k < i && row[k] != m(k, i)) fail(where, "matrix is not symmetric");
      m.set(i, k, row[k]);
    }
  }
  return m;
}

// Orthonormal frame as an array of k columns, each with n entries.
Mat get_columns(const ojson& j, int n, int k, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != k)
    fail(where, "expected an array of " + std::to_string(k) + " columns");
  Mat q(n, k);
  for (int c = 0; c < k; ++c) q.set_col(c, get_vec(j[c], n, where));
  return q;
}

PValue get_p(const ojson& j, const std::string& where) {
  if (j.is_string()) {
    if (j.get<std::string>() != "inf") fail(where, "the only string value allowed is \"inf\"");
    return PValue::infinity();
  }
  const double v = get_num(j, where);
  if (!(v >= 2.0)) fail(where, "finite p must satisfy p >= 2");
  return PValue::finite(v);
}

ojson p_to_json(const PValue& p) {
  if (p.is_infinite()) return ojson("inf");
  return ojson(p.value());
}

RadialProfile profile_from_json(const ojson& j, const RadialFundamental& rf,
                                const std::string& where) {
  const std::string type = get_str(require(j, "type", where), where + ".type");
  if (type == "fundamental")
    return RadialProfile::fundamental(rf, opt_num(j, "c1", 1.0, where), opt_num(j, "c2", 0.0, where));
  if (type == "truncated_fundamental")
    return RadialProfile::truncated_fundamental(rf, get_num(require(j, "level", where), where + ".level"),
                                                opt_num(j, "c1", 1.0, where),
                                                opt_num(j, "c2", 0.0, where));
  if (type == "min_pair")
    return RadialProfile::min_pair(rf, get_num(require(j, "c1a", where), where),
                                   get_num(require(j, "c2a", where), where),
                                   get_num(require(j, "c1b", where), where),
                                   get_num(require(j, "c2b", where), where));
  if (type == "concave_poly")
    return RadialProfile::concave_poly(get_num(require(j, "a", where), where),
                                       get_num(require(j, "b", where), where),
                                       get_num(require(j, "c", where), where));
  if (type == "constant") return RadialProfile::constant(get_num(require(j, "v", where), where));
  fail(where + ".type", "unknown profile type '" + type + "'");
}

ojson profile_to_json(const RadialProfile& u) {
  const auto& p = u.params();
  ojson j;
  switch (u.kind()) {
    case RadialProfile::Kind::Fundamental:
      j["type"] = "fundamental";
      j["c1"] = p[0];
      j["c2"] = p[1];
      break;
    case RadialProfile::Kind::TruncatedFundamental:
      j["type"] = "truncated_fundamental";
      j["level"] = p[2];
      j["c1"] = p[0];
      j["c2"] = p[1];
      break;
    case RadialProfile::Kind::MinPair:
      j["type"] = "min_pair";
      j["c1a"] = p[0];
      j["c2a"] = p[1];
      j["c1b"] = p[2];
      j["c2b"] = p[3];
      break;
    case RadialProfile::Kind::ConcavePoly:
      j["type"] = "concave_poly";
      j["a"] = p[0];
      j["b"] = p[1];
      j["c"] = p[2];
      break;
    case RadialProfile::Kind::Constant:
      j["type"] = "constant";
      j["v"] = p[0];
      break;
  }
  return j;
}

ScalarField field_from_json(const ojson& j, int n, const PValue& p, const std::string& where) {
  const std::string type = get_str(require(j, "type", where), where + ".type");
  if (type == "quadratic")
    return ScalarField::quadratic(get_symmatrix(require(j, "a", where), n, where + ".a"),
                                  opt_vec(j, "b", n, where), opt_num(j, "c", 0.0, where));
  if (type == "affine")
    return ScalarField::affine(get_vec(require(j, "a", where), n, where + ".a"),
                               opt_num(j, "b", 0.0, where));
  if (type == "radial_fundamental")
    return ScalarField::cylindrical(
        CylFundamental::radial(opt_vec(j, "center", n, where), opt_num(j, "c1", 1.0, where),
                               opt_num(j, "c2", 0.0, where)),
        p);
  if (type == "cylindrical_fundamental") {
    const int k = get_int(require(j, "k", where), where + ".k");
    if (k < 1 || k > n) fail(where + ".k", "need 1 <= k <= n");
    return ScalarField::cylindrical(
        CylFundamental(k, get_columns(require(j, "q", where), n, k, where + ".q"),
                       opt_vec(j, "x0", n, where), opt_num(j, "c1", 1.0, where),
                       opt_num(j, "c2", 0.0, where)),
        p);
  }
  if (type == "radial_profile")
    return ScalarField::radial_profile(
        profile_from_json(require(j, "profile", where), RadialFundamental(n, p),
                          where + ".profile"),
        opt_vec(j, "center", n, where));
  if (type == "weighted_sum") {
    const ojson& terms = require(j, "terms", where);
    if (!terms.is_array() || terms.empty()) fail(where + ".terms", "expected a non-empty array");
    std::vector<std::pair<double, ScalarField>> out;
    for (size_t i = 0; i < terms.size(); ++i) {
      const std::string tw = where + ".terms[" + std::to_string(i) + "]";
      out.emplace_back(get_num(require(terms[i], "weight", tw), tw + ".weight"),
                       field_from_json(require(terms[i], "field", tw), n, p, tw + ".field"));
    }
    return ScalarField::weighted_sum(std::move(out));
  }
  if (type == "composed") {
    ScalarField inner = field_from_json(require(j, "field", where), n, p, where + ".field");
    Mat q = j.contains("q") ? get_columns(j.at("q"), n, n, where + ".q") : Mat::identity(n);
    return compose_isometry(inner, Isometry(std::move(q), opt_vec(j, "x0", n, where)));
  }
  if (type == "reflected")
    return reflect_through(field_from_json(require(j, "field", where), n, p, where + ".field"),
                           get_vec(require(j, "axis", where), n, where + ".axis"));
  fail(where + ".type", "unknown field type '" + type + "'");
}

ojson vec_to_json(const Vec& v) {
  ojson a = ojson::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

ojson columns_to_json(const Mat& q) {
  ojson a = ojson::array();
  for (int c = 0; c < q.cols(); ++c) a.push_back(vec_to_json(q.col(c)));
  return a;
}

ojson symmatrix_to_json(const SymMatrix& m) {
  ojson rows = ojson::array();
  for (int i = 0; i < m.size(); ++i) {
    ojson row = ojson::array();
    for (int j = 0; j < m.size(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

ojson field_to_json(const ScalarField& f) {
  const detail::FieldNode& node = f.node();
  ojson j;
  if (auto* q = dynamic_cast<const detail::QuadraticNode*>(&node)) {
    j["type"] = "quadratic";
    j["a"] = symmatrix_to_json(q->a);
    j["b"] = vec_to_json(q->b);
    j["c"] = q->c;
  } else if (auto* a = dynamic_cast<const detail::AffineNode*>(&node)) {
    j["type"] = "affine";
    j["a"] = vec_to_json(a->a);
    j["b"] = a->b;
  } else if (auto* r = dynamic_cast<const detail::RadialProfileNode*>(&node)) {
    j["type"] = "radial_profile";
    j["profile"] = profile_to_json(r->u);
    j["center"] = vec_to_json(r->center);
  } else if (auto* c = dynamic_cast<const detail::CylNode*>(&node)) {
    j["type"] = "cylindrical_fundamental";
    j["k"] = c->cf.k;
    j["q"] = columns_to_json(c->cf.q);
    j["x0"] = vec_to_json(c->cf.x0);
    j["c1"] = c->cf.c1;
    j["c2"] = c->cf.c2;
  } else if (auto* s = dynamic_cast<const detail::SumNode*>(&node)) {
    j["type"] = "weighted_sum";
    ojson terms = ojson::array();
    for (const auto& [w, g] : s->terms)
      terms.push_back(ojson{{"weight", w}, {"field", field_to_json(g)}});
    j["terms"] = std::move(terms);
  } else if (auto* cm = dynamic_cast<const detail::ComposedNode*>(&node)) {
    j["type"] = "composed";
    j["field"] = field_to_json(cm->inner);
    j["q"] = columns_to_json(cm->t.q);
    j["x0"] = vec_to_json(cm->t.x0);
  } else if (auto* rf = dynamic_cast<const detail::ReflectedNode*>(&node)) {
    j["type"] = "reflected";
    j["field"] = field_to_json(rf->inner);
    j["axis"] = vec_to_json(rf->axis);
  } else {
    j["type"] = "opaque";
  }
  return j;
}

const std::set<std::string> kKnownSuites = {"dominative_sign", "theorem1", "radial_equivalence",
                                            "theorem2"};

std::vector<double> to_std(const Vec& v) {
  std::vector<double> out(static_cast<size_t>(v.size()));
  for (int i = 0; i < v.size(); ++i) out[static_cast<size_t>(i)] = v[i];
  return out;
}

// The radius ladder shared by the radial suites: log-spaced across two
// decades around 1.
std::vector<double> radius_ladder() {
  std::vector<double> radii;
  for (int i = 0; i < 64; ++i)
    radii.push_back(std::exp(std::log(1e-2) + (std::log(10.0) - std::log(1e-2)) * i / 63.0));
  return radii;
}

SuiteOutcome run_dominative_sign(const Scenario& sc) {
  SuiteOutcome out;
  out.suite = "dominative_sign";
  const double tol = 1e-9 * sc.sampling.tol_scale;
  double max_dom = -std::numeric_limits<double>::infinity();
  Vec witness(sc.n);
  long long checked = 0, skipped = 0, worst_field = 0;
  for (size_t fi = 0; fi < sc.fields.size(); ++fi) {
    const ScalarField& f = sc.fields[fi];
    Rng rng(sc.sampling.seed);  // fresh stream per field, so order is immaterial
    for (int i = 0; i < sc.sampling.count; ++i) {
      const Point x = rng.point_in_box(sc.n, sc.sampling.half_width);
      if (distance_to_singularity(f, x) < sc.sampling.exclusion_radius) {
        ++skipped;
        continue;
      }
      try {
        const double d = dominative(eval_jet(f, x), sc.p);
        if (d > max_dom) {
          max_dom = d;
          witness = x;
          worst_field = static_cast<long long>(fi);
        }
        ++checked;
      } catch (const SingularityError&) {
        ++skipped;
      }
    }
  }
  out.counts = {{"fields", static_cast<long long>(sc.fields.size())},
                {"samples_checked", checked},
                {"skipped_singular", skipped},
                {"worst_field", worst_field}};
  out.metrics = {{"max_dominative", checked > 0 ? max_dom : 0.0}};
  out.points = {{"witness", to_std(witness)}};
  out.pass = checked > 0 && max_dom <= tol;
  return out;
}

SuiteOutcome run_theorem1(const Scenario& sc) {
  SuiteOutcome out;
  out.suite = "theorem1";
  const SuperpositionReport rep = verify_theorem1_i(sc.fields, sc.p, sc.sampling);
  out.counts = {{"fields", static_cast<long long>(sc.fields.size())},
                {"samples_checked", rep.samples_checked},
                {"skipped_singular", rep.skipped_singular},
                {"precondition_violations", static_cast<long long>(rep.violations.size())}};
  out.metrics = {{"max_dominative", rep.max_dominative}, {"max_p_laplace", rep.max_p_laplace}};
  out.points = {{"witness_dominative", to_std(rep.witness_dominative)},
                {"witness_p_laplace", to_std(rep.witness_p_laplace)}};
  out.pass = rep.pass;
  return out;
}

SuiteOutcome run_radial_equivalence(const Scenario& sc) {
  SuiteOutcome out;
  out.suite = "radial_equivalence";
  const RadialFundamental rf = sc.fundamental();
  const std::vector<double> radii = radius_ladder();
  long long radii_checked = 0, skipped = 0, kinks = 0;
  double max_res = -std::numeric_limits<double>::infinity();
  double witness_radius = 0.0;
  bool pass = true;
  for (const auto& [u, center] : sc.profiles) {
    const RadialEquivalenceReport rep = verify_radial_equivalence(u, rf, radii, sc.sampling.tol_scale);
    radii_checked += rep.radii_checked;
    skipped += rep.skipped_kinks;
    kinks += static_cast<long long>(rep.kinks.size());
    if (rep.max_residual > max_res) {
      max_res = rep.max_residual;
      witness_radius = rep.witness_radius;
    }
    pass = pass && rep.pass;
  }
  out.counts = {{"profiles", static_cast<long long>(sc.profiles.size())},
                {"radii_checked", radii_checked},
                {"skipped_kinks", skipped},
                {"kinks_checked", kinks}};
  out.metrics = {{"max_residual", max_res}, {"witness_radius", witness_radius}};
  out.pass = pass;
  return out;
}

SuiteOutcome run_theorem2(const Scenario& sc) {
  SuiteOutcome out;
  out.suite = "theorem2";
  const Theorem2Report rep =
      verify_theorem2(sc.profiles, sc.concave_part, sc.fundamental(), sc.sampling);
  out.counts = {{"profiles", static_cast<long long>(sc.profiles.size())},
                {"samples_checked", rep.samples_checked},
                {"skipped_singular", rep.skipped_singular},
                {"preconditions_ok", rep.preconditions_ok ? 1 : 0}};
  out.metrics = {{"max_dominative", rep.max_dominative}, {"max_p_laplace", rep.max_p_laplace}};
  out.points = {{"witness_dominative", to_std(rep.witness_dominative)},
                {"witness_p_laplace", to_std(rep.witness_p_laplace)}};
  out.pass = rep.pass;
  return out;
}

bool verbose_enabled() {
  const char* v = std::getenv("DPLAP_VERBOSE");
  return v != nullptr && std::string(v) != "0";
}

void write_text(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + out_path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("write to '" + out_path + "' failed");
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ojson counterexample_json(const Scenario& sc, const Counterexample& ce) {
  const char* kind = ce.kind == Counterexample::Kind::Linear ? "linear"
                     : ce.kind == Counterexample::Kind::FundamentalSolution ? "fundsol"
                                                                            : "reflection";
  ojson rep;
  rep["tool"] = ojson{{"name", kToolName}, {"version", kToolVersion}, {"rng", Rng::kGeneratorName}};
  rep["scenario"] =
      ojson{{"name", sc.name}, {"hash", sc.hash}, {"n", sc.n}, {"p", p_to_json(sc.p)}};
  rep["kind"] = kind;
  rep["base_point"] = vec_to_json(ce.base_point);
  rep["perturbation"] = field_to_json(ce.perturbation);
  rep["witness_point"] = vec_to_json(ce.witness_point);
  rep["witness_value"] = ce.witness_value;
  rep["witness_normalized"] = ce.witness_normalized;

  // Recomputed through the generic evaluator, not the constructor's
  // closed forms: same jet, independent code path.
  const Jet2 j = eval_jet(ce.sum_field(), ce.witness_point);
  const double recomputed =
      ce.witness_normalized ? normalized_p_laplacian(j, sc.p) : p_laplacian(j, sc.p);
  rep["witness_recomputed"] = recomputed;
  const bool matches = std::abs(recomputed - ce.witness_value) <=
                       1e-8 * (1.0 + std::abs(ce.witness_value));
  rep["recomputation_matches"] = matches;
  if (!ce.residual_trace.empty()) {
    ojson trace = ojson::array();
    for (const auto& [s, rho] : ce.residual_trace) trace.push_back(ojson::array({s, rho}));
    rep["residual_trace"] = std::move(trace);
  }
  rep["pass"] = recomputed > 0.0 && matches;
  return rep;
}

}  // namespace

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Scenario parse_scenario(const std::string& json_text) {
  ojson root;
  try {
    root = ojson::parse(json_text);
  } catch (const ojson::parse_error& e) {
    throw ScenarioError(std::string("scenario: ") + e.what());
  }
  if (!root.is_object()) throw ScenarioError("scenario: top level must be an object");

  Scenario sc;
  try {
    sc.version = get_int(require(root, "version", "version"), "version");
    if (sc.version != 1) fail("version", "unsupported version " + std::to_string(sc.version));
    sc.name = get_str(require(root, "name", "name"), "name");
    sc.n = get_int(require(root, "n", "n"), "n");
    if (sc.n < 1 || sc.n > kMaxDim) fail("n", "dimension outside [1, 16]");
    sc.p = get_p(require(root, "p", "p"), "p");

    if (root.contains("sampling")) {
      const ojson& s = root.at("sampling");
      if (!s.is_object()) fail("sampling", "expected an object");
      if (s.contains("count")) {
        sc.sampling.count = get_int(s.at("count"), "sampling.count");
        if (sc.sampling.count < 1) fail("sampling.count", "need at least one sample");
      }
      sc.sampling.half_width = opt_num(s, "half_width", sc.sampling.half_width, "sampling");
      if (!(sc.sampling.half_width > 0)) fail("sampling.half_width", "must be positive");
      sc.sampling.exclusion_radius =
          opt_num(s, "exclusion_radius", sc.sampling.exclusion_radius, "sampling");
      if (!(sc.sampling.exclusion_radius >= 0)) fail("sampling.exclusion_radius", "must be >= 0");
      if (s.contains("seed")) {
        const ojson& seed = s.at("seed");
        if (!seed.is_number_integer() || seed.get<long long>() < 0)
          fail("sampling.seed", "expected a nonnegative integer");
        sc.sampling.seed = seed.get<std::uint64_t>();
      }
      sc.sampling.tol_scale = opt_num(s, "tol_scale", sc.sampling.tol_scale, "sampling");
      if (!(sc.sampling.tol_scale > 0)) fail("sampling.tol_scale", "must be positive");
    }

    const ojson& suites = require(root, "suites", "suites");
    if (!suites.is_array() || suites.empty()) fail("suites", "expected a non-empty array");
    for (const auto& s : suites) {
      const std::string name = get_str(s, "suites");
      if (!kKnownSuites.count(name)) fail("suites", "unknown suite '" + name + "'");
      sc.suites.push_back(name);
    }

    if (root.contains("expected_verdict")) {
      sc.expected_verdict = get_str(root.at("expected_verdict"), "expected_verdict");
      if (sc.expected_verdict != "superharmonic" && sc.expected_verdict != "not-superharmonic")
        fail("expected_verdict", "must be \"superharmonic\" or \"not-superharmonic\"");
    }

    if (root.contains("fields")) {
      const ojson& fields = root.at("fields");
      if (!fields.is_array()) fail("fields", "expected an array");
      for (size_t i = 0; i < fields.size(); ++i)
        sc.fields.push_back(
            field_from_json(fields[i], sc.n, sc.p, "fields[" + std::to_string(i) + "]"));
    }

    if (root.contains("profiles")) {
      const ojson& profiles = root.at("profiles");
      if (!profiles.is_array()) fail("profiles", "expected an array");
      const RadialFundamental rf = sc.fundamental();
      for (size_t i = 0; i < profiles.size(); ++i) {
        const std::string where = "profiles[" + std::to_string(i) + "]";
        RadialProfile u = profile_from_json(require(profiles[i], "profile", where), rf,
                                            where + ".profile");
        sc.profiles.emplace_back(std::move(u), opt_vec(profiles[i], "center", sc.n, where));
      }
    }

    if (root.contains("concave_part"))
      sc.concave_part = field_from_json(root.at("concave_part"), sc.n, sc.p, "concave_part");

    if (root.contains("x0")) sc.x0 = get_vec(root.at("x0"), sc.n, "x0");

    for (const std::string& s : sc.suites) {
      if ((s == "dominative_sign" || s == "theorem1") && sc.fields.empty())
        fail("suites", "suite '" + s + "' needs a non-empty 'fields' list");
      if ((s == "radial_equivalence" || s == "theorem2") && sc.profiles.empty())
        fail("suites", "suite '" + s + "' needs a non-empty 'profiles' list");
    }
  } catch (const ScenarioError&) {
    throw;
  } catch (const std::exception& e) {
    // Constructor preconditions (bad frames, negative weights, ...) surface
    // here; report them as scenario validation failures.
    throw ScenarioError(std::string("scenario: ") + e.what());
  }
  sc.hash = fnv1a64_hex(json_text);
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError("scenario: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

ScenarioResult run_scenario(const Scenario& sc) {
  ScenarioResult res;
  for (const std::string& s : sc.suites) {
    if (s == "dominative_sign")
      res.suites.push_back(run_dominative_sign(sc));
    else if (s == "theorem1")
      res.suites.push_back(run_theorem1(sc));
    else if (s == "radial_equivalence")
      res.suites.push_back(run_radial_equivalence(sc));
    else
      res.suites.push_back(run_theorem2(sc));
  }
  bool all = true;
  for (const SuiteOutcome& s : res.suites) all = all && s.pass;
  res.verdict = all ? "superharmonic" : "not-superharmonic";
  res.matches_expected = res.verdict == sc.expected_verdict;
  return res;
}

std::string render_report(const Scenario& sc, const ScenarioResult& res) {
  ojson rep;
  rep["tool"] = ojson{{"name", kToolName}, {"version", kToolVersion}, {"rng", Rng::kGeneratorName}};
  rep["scenario"] = ojson{{"name", sc.name},
                          {"hash", sc.hash},
                          {"n", sc.n},
                          {"p", p_to_json(sc.p)},
                          {"seed", sc.sampling.seed},
                          {"count", sc.sampling.count},
                          {"half_width", sc.sampling.half_width},
                          {"exclusion_radius", sc.sampling.exclusion_radius},
                          {"tol_scale", sc.sampling.tol_scale}};
  ojson suites = ojson::array();
  for (const SuiteOutcome& s : res.suites) {
    ojson o;
    o["suite"] = s.suite;
    o["pass"] = s.pass;
    for (const auto& [k, v] : s.counts) o[k] = v;
    for (const auto& [k, v] : s.metrics) o[k] = v;
    for (const auto& [k, v] : s.points) o[k] = v;
    suites.push_back(std::move(o));
  }
  rep["suites"] = std::move(suites);
  rep["verdict"] = res.verdict;
  rep["expected_verdict"] = sc.expected_verdict;
  rep["pass"] = res.matches_expected;
  return rep.dump(2) + "\n";
}

std::string render_counterexample_report(const Scenario& sc, const Counterexample& ce) {
  return counterexample_json(sc, ce).dump(2) + "\n";
}

int cmd_verify(const VerifyOptions& opt) {
  try {
    Scenario sc = load_scenario(opt.scenario_path);
    if (opt.seed) sc.sampling.seed = *opt.seed;
    if (opt.points) {
      if (*opt.points < 1) throw ScenarioError("scenario: --points must be at least 1");
      sc.sampling.count = *opt.points;
    }
    if (opt.tol_scale) {
      if (!(*opt.tol_scale > 0)) throw ScenarioError("scenario: --tol-scale must be positive");
      sc.sampling.tol_scale = *opt.tol_scale;
    }
    const ScenarioResult res = run_scenario(sc);
    write_text(opt.out_path, render_report(sc, res));
    if (verbose_enabled()) {
      for (const SuiteOutcome& s : res.suites)
        std::cerr << "suite " << s.suite << ": " << (s.pass ? "pass" : "FAIL") << "\n";
      std::cerr << "verdict " << res.verdict << " (expected " << sc.expected_verdict << ")\n";
    }
    return res.matches_expected ? 0 : 1;
  } catch (const ScenarioError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_sample(const SampleOptions& opt) {
  try {
    const Scenario sc = load_scenario(opt.scenario_path);
    if (opt.field_index < 0 || opt.field_index >= static_cast<int>(sc.fields.size()))
      throw ScenarioError("scenario: field index out of range");
    if (opt.axis_x < 0 || opt.axis_x >= sc.n || opt.axis_y < 0 || opt.axis_y >= sc.n ||
        opt.axis_x == opt.axis_y)
      throw ScenarioError("scenario: slice axes must be distinct and < n");
    if (opt.resolution < 2 || opt.resolution > 2048)
      throw ScenarioError("scenario: resolution must lie in [2, 2048]");
    const double extent = opt.extent > 0 ? opt.extent : sc.sampling.half_width;

    const ScalarField& f = sc.fields[static_cast<size_t>(opt.field_index)];
    std::string csv = "x,y,value,|grad|,lambda_max,D_p,Delta_p\n";
    for (int iy = 0; iy < opt.resolution; ++iy) {
      const double y = -extent + 2.0 * extent * iy / (opt.resolution - 1);
      for (int ix = 0; ix < opt.resolution; ++ix) {
        const double x = -extent + 2.0 * extent * ix / (opt.resolution - 1);
        Point pt(sc.n);
        pt[opt.axis_x] = x;
        pt[opt.axis_y] = y;
        csv += fmt17(x);
        csv += ',';
        csv += fmt17(y);
        if (distance_to_singularity(f, pt) < sc.sampling.exclusion_radius) {
          csv += ",,,,,\n";
          continue;
        }
        try {
          const Jet2 j = eval_jet(f, pt);
          csv += ',';
          csv += fmt17(j.value);
          csv += ',';
          csv += fmt17(j.gradient.norm());
          csv += ',';
          csv += fmt17(largest_eig(j.hessian).first);
          csv += ',';
          csv += fmt17(dominative(j, sc.p));
          csv += ',';
          csv += fmt17(p_laplacian(j, sc.p));
          csv += '\n';
        } catch (const SingularityError&) {
          csv += ",,,,,\n";
        }
      }
    }
    write_text(opt.out_path, csv);
    return 0;
  } catch (const ScenarioError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_counterexample(const CounterexampleOptions& opt) {
  try {
    const Scenario sc = load_scenario(opt.scenario_path);
    if (opt.kind != "linear" && opt.kind != "fundsol" && opt.kind != "reflection")
      throw ScenarioError("scenario: kind must be linear, fundsol or reflection");
    if (!sc.x0) throw ScenarioError("scenario: counterexample runs need 'x0'");
    if (opt.field_index < 0 || opt.field_index >= static_cast<int>(sc.fields.size()))
      throw ScenarioError("scenario: field index out of range");
    const ScalarField& u = sc.fields[static_cast<size_t>(opt.field_index)];

    const double dom = dominative(eval_jet(u, *sc.x0), sc.p);
    if (!(dom > 0)) {
      std::cerr << "dominative value at x0 is " << dom
                << "; a counterexample needs a point where it is positive\n";
      return 1;
    }

    const Counterexample ce = opt.kind == "linear" ? counterexample_linear(u, *sc.x0, sc.p)
                              : opt.kind == "fundsol"
                                  ? counterexample_fundsol_search(u, *sc.x0, sc.p)
                                  : counterexample_reflection(u, *sc.x0, sc.p);
    const ojson rep = counterexample_json(sc, ce);
    write_text(opt.out_path, rep.dump(2) + "\n");
    return rep.at("pass").get<bool>() ? 0 : 1;
  } catch (const ScenarioError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_chords(const ChordsOptions& opt) {
  try {
    const Scenario sc = load_scenario(opt.scenario_path);
    if (sc.profiles.empty()) throw ScenarioError("scenario: chords runs need 'profiles'");
    if (opt.profile_index < 0 || opt.profile_index >= static_cast<int>(sc.profiles.size()))
      throw ScenarioError("scenario: profile index out of range");
    const RadialProfile& u = sc.profiles[static_cast<size_t>(opt.profile_index)].first;
    const RadialFundamental rf = sc.fundamental();

    std::vector<double> radii = opt.radii;
    for (double b : radii)
      if (!(b >= 0) || !std::isfinite(b))
        throw ScenarioError("scenario: chord radii must be finite and >= 0");
    if (radii.empty()) {
      for (int i = 0; i < 32; ++i)
        radii.push_back(std::exp(std::log(1e-2) + (std::log(10.0) - std::log(1e-2)) * i / 31.0));
      for (double k : u.kink_radii()) radii.push_back(k);
      std::sort(radii.begin(), radii.end());
    }

    std::string csv = "b,C_b_minus,C_b_plus,touch_C1,touch_ok\n";
    for (double b : radii) {
      csv += fmt17(b);
      if (!std::isfinite(u.value(b))) {
        csv += ",,,,pole\n";  // the pole radius has no chords and no touching field
        continue;
      }
      if (b == 0.0) {
        // No left chords at the origin; the touching field is the constant.
        csv += ",,,";
        csv += fmt17(0.0);
        csv += ",1\n";
        continue;
      }
      const auto [cm, cp] = one_sided_chord_limits(u, b, rf);
      const CylFundamental h = touching_from_above(u, b, rf);
      const double hb = h.c1 * W(rf, b) + h.c2;
      bool ok = std::abs(hb - u.value(b)) <= 1e-10 * (1.0 + std::abs(u.value(b)));
      for (int i = 0; i < 200 && ok; ++i) {
        const double r = std::exp(std::log(b / 10.0) +
                                  (std::log(10.0 * b) - std::log(b / 10.0)) * i / 199.0);
        ok = h.c1 * W(rf, r) + h.c2 >= u.value(r) - 1e-9;
      }
      csv += ',';
      csv += fmt17(cm);
      csv += ',';
      csv += fmt17(cp);
      csv += ',';
      csv += fmt17(h.c1);
      csv += ok ? ",1\n" : ",0\n";
    }
    write_text(opt.out_path, csv);
    return 0;
  } catch (const ScenarioError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace dplap
