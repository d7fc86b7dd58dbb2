// Command-line front door. All real work lives in the library's cmd_*
// functions so the exit-code contract is testable without spawning
// processes; this file only declares the interface.

#include <cstdint>
#include <vector>

#include <CLI11.hpp>

#include "dplap/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"dominative p-Laplace operators: verification suites, grids and counterexamples"};
  app.require_subcommand(1);

  dplap::VerifyOptions vo;
  std::uint64_t seed = 0;
  int points = 0;
  double tol_scale = 0.0;
  CLI::App* verify = app.add_subcommand("verify", "run a scenario's suites, write a JSON report");
  verify->add_option("--scenario", vo.scenario_path, "scenario JSON file")->required();
  verify->add_option("--out", vo.out_path, "report path (default: stdout)");
  CLI::Option* seed_opt = verify->add_option("--seed", seed, "override the sampling seed");
  CLI::Option* points_opt = verify->add_option("--points", points, "override the sample count");
  CLI::Option* tol_opt =
      verify->add_option("--tol-scale", tol_scale, "scale the suite tolerances");

  dplap::SampleOptions so;
  std::vector<int> axes;
  CLI::App* sample = app.add_subcommand("sample", "evaluate a field on a 2D slice as CSV");
  sample->add_option("--scenario", so.scenario_path, "scenario JSON file")->required();
  sample->add_option("--out", so.out_path, "CSV path (default: stdout)");
  sample->add_option("--field", so.field_index, "index into the scenario's fields (default 0)");
  sample->add_option("--axes", axes, "the two slice axes (default 0 1)")->expected(2);
  sample->add_option("--res", so.resolution, "grid points per axis, at most 2048 (default 101)");
  sample->add_option("--extent", so.extent,
                     "half-width of the grid (default: the sampling half_width)");

  dplap::CounterexampleOptions co;
  CLI::App* cx = app.add_subcommand(
      "counterexample", "perturb a field so the sum stops being p-superharmonic");
  cx->add_option("--scenario", co.scenario_path, "scenario JSON file (must carry x0)")->required();
  cx->add_option("--kind", co.kind, "linear, fundsol or reflection")->required();
  cx->add_option("--out", co.out_path, "artifact path (default: stdout)");
  cx->add_option("--field", co.field_index, "index into the scenario's fields (default 0)");

  dplap::ChordsOptions ho;
  CLI::App* chords =
      app.add_subcommand("chords", "tabulate one-sided chord limits and touching data as CSV");
  chords->add_option("--scenario", ho.scenario_path, "scenario JSON file")->required();
  chords->add_option("--out", ho.out_path, "CSV path (default: stdout)");
  chords->add_option("--profile", ho.profile_index,
                     "index into the scenario's profiles (default 0)");
  chords->add_option("--radii", ho.radii, "explicit radii (default: log ladder plus the kinks)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // bad usage is a validation error
  }

  if (verify->parsed()) {
    if (seed_opt->count() > 0) vo.seed = seed;
    if (points_opt->count() > 0) vo.points = points;
    if (tol_opt->count() > 0) vo.tol_scale = tol_scale;
    return dplap::cmd_verify(vo);
  }
  if (sample->parsed()) {
    if (!axes.empty()) {
      so.axis_x = axes[0];
      so.axis_y = axes[1];
    }
    return dplap::cmd_sample(so);
  }
  if (cx->parsed()) return dplap::cmd_counterexample(co);
  return dplap::cmd_chords(ho);
}
