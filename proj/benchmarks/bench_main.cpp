// Microbenchmarks for the hot paths: the Jacobi eigensolver (behind every
// dominative evaluation), jet evaluation of superpositions, and the chord
// limit iteration. Inputs cycle through small pregenerated pools so the
// measurement is not dominated by input construction.

#include <benchmark/benchmark.h>

#include <vector>

#include "dplap/fields.hpp"
#include "dplap/linalg.hpp"
#include "dplap/operators.hpp"
#include "dplap/radial_chords.hpp"
#include "dplap/rng.hpp"
#include "dplap/superposition.hpp"

namespace {

using namespace dplap;

SymMatrix random_sym(Rng& rng, int n) {
  SymMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) a.set(i, j, rng.uniform(-1.0, 1.0));
  return a;
}

void BM_JacobiEigen(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(7);
  std::vector<SymMatrix> pool;
  for (int i = 0; i < 64; ++i) pool.push_back(random_sym(rng, n));
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(jacobi_eigen(pool[i++ % pool.size()]));
  }
}
BENCHMARK(BM_JacobiEigen)->Arg(3)->Arg(8)->Arg(16);

void BM_Dominative(benchmark::State& state) {
  Rng rng(11);
  const PValue p = PValue::finite(4.0);
  std::vector<Jet2> pool;
  for (int i = 0; i < 64; ++i)
    pool.emplace_back(0.0, rng.unit_vector(3), random_sym(rng, 3));
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dominative(pool[i++ % pool.size()], p));
  }
}
BENCHMARK(BM_Dominative);

void BM_SumJet(benchmark::State& state) {
  const int n = 3;
  const PValue p = PValue::finite(4.0);
  CrandallSum sum(n, p,
                  {{1.0, Vec{2.0, 0.0, 0.0}}, {0.5, Vec{0.0, 2.0, 0.0}}, {2.0, Vec{0.0, 0.0, 2.0}}},
                  std::nullopt);
  const ScalarField f = sum.as_field();
  Rng rng(13);
  std::vector<Point> pts;
  for (int i = 0; i < 64; ++i) pts.push_back(rng.point_in_box(n, 1.0));
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_jet(f, pts[i++ % pts.size()]));
  }
}
BENCHMARK(BM_SumJet);

void BM_ChordLimits(benchmark::State& state) {
  const RadialFundamental rf(3, PValue::finite(4.0));
  const RadialProfile u = RadialProfile::truncated_fundamental(rf, 0.0);
  const double b = u.kink_radii().front();
  for (auto _ : state) {
    benchmark::DoNotOptimize(one_sided_chord_limits(u, b, rf));
  }
}
BENCHMARK(BM_ChordLimits);

}  // namespace

BENCHMARK_MAIN();
