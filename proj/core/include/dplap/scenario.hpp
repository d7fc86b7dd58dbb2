#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dplap/fields.hpp"
#include "dplap/profile.hpp"
#include "dplap/pvalue.hpp"
#include "dplap/superposition.hpp"

namespace dplap {

inline constexpr const char* kToolName = "dplap";
inline constexpr const char* kToolVersion = "0.1.0";

// A verification job loaded from a JSON file: the dimension and exponent,
// the fields and/or radial profiles under test, the sampling plan, the
// suites to run and the verdict the author expects. See docs/scenarios.md
// for the schema.
struct Scenario {
  int version = 1;
  std::string name;
  int n = 0;
  PValue p = PValue::finite(2.0);
  SamplingPlan sampling;
  std::vector<std::string> suites;
  std::string expected_verdict = "superharmonic";

  std::vector<ScalarField> fields;
  std::vector<std::pair<RadialProfile, Point>> profiles;
  std::optional<ScalarField> concave_part;
  std::optional<Point> x0;  // base point for counterexample runs

  std::string hash;  // "fnv1a64:<16 hex digits>" of the source bytes

  RadialFundamental fundamental() const { return RadialFundamental(n, p); }
};

// FNV-1a over the raw bytes, rendered as "fnv1a64:<16 hex digits>".
std::string fnv1a64_hex(const std::string& bytes);

// Parses and validates scenario JSON. Throws ScenarioError with the
// offending key in the message.
Scenario parse_scenario(const std::string& json_text);

// Reads the file and parses it; the stored hash covers the file bytes.
Scenario load_scenario(const std::string& path);

// Outcome of one suite. Counts, residual metrics and witness points are
// kept as ordered key/value lists so the JSON report can be assembled
// without this header depending on a JSON library.
struct SuiteOutcome {
  std::string suite;
  bool pass = false;
  std::vector<std::pair<std::string, long long>> counts;
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<std::pair<std::string, std::vector<double>>> points;
};

struct ScenarioResult {
  std::vector<SuiteOutcome> suites;
  std::string verdict;  // "superharmonic" when every suite passed
  bool matches_expected = false;
};

// Runs the scenario's suites:
//   dominative_sign     per-field max of the dominative operator <= tol
//   theorem1            superposition check of the field list
//   radial_equivalence  per-profile radial check on a log ladder of radii
//   theorem2            radial profiles + concave part superposition check
// tol is 1e-9 * sampling.tol_scale throughout.
ScenarioResult run_scenario(const Scenario& sc);

// Renders the deterministic JSON report (two-space indent, trailing
// newline). Identical scenario bytes and plan give identical report bytes;
// anything that varies between runs, wall time included, stays out.
std::string render_report(const Scenario& sc, const ScenarioResult& res);

// Counterexample artifact: the construction parameters plus the witness
// recomputed through the generic field evaluator rather than the
// constructor's closed forms.
std::string render_counterexample_report(const Scenario& sc, const Counterexample& ce);

// CLI entry points. They print diagnostics to stderr and return the
// process exit code: 0 on success (for verify: verdict matches the
// declared expectation), 1 on a failed run, 2 on validation errors.
struct VerifyOptions {
  std::string scenario_path;
  std::string out_path;  // empty writes to stdout
  std::optional<std::uint64_t> seed;
  std::optional<int> points;
  std::optional<double> tol_scale;
};
int cmd_verify(const VerifyOptions& opt);

struct SampleOptions {
  std::string scenario_path;
  std::string out_path;
  int field_index = 0;
  int axis_x = 0, axis_y = 1;  // the 2D slice; other coordinates are 0
  int resolution = 101;        // points per axis, at most 2048
  double extent = 0.0;         // half-width; <= 0 uses the sampling plan's
};
int cmd_sample(const SampleOptions& opt);

struct CounterexampleOptions {
  std::string scenario_path;
  std::string out_path;
  std::string kind;  // "linear", "fundsol" or "reflection"
  int field_index = 0;
};
int cmd_counterexample(const CounterexampleOptions& opt);

struct ChordsOptions {
  std::string scenario_path;
  std::string out_path;
  int profile_index = 0;
  std::vector<double> radii;  // empty picks a log ladder plus the kinks
};
int cmd_chords(const ChordsOptions& opt);

}  // namespace dplap
