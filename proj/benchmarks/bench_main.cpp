#include <benchmark/benchmark.h>

#include "opuc/discriminants.hpp"
#include "opuc/families.hpp"
#include "opuc/ladder.hpp"
#include "opuc/moments.hpp"
#include "opuc/report.hpp"
#include "opuc/zeros.hpp"

using namespace opuc;

static void BM_BuildFromReflections(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  std::vector<cplx> phi0(N);
  double kappa = 1.0;
  for (int n = 1; n <= N; ++n) {
    kappa /= std::sqrt(1.0 - 0.25);
    phi0[n - 1] = std::polar(0.5 * kappa, 0.7 * n);
  }
  for (auto _ : state) {
    auto sys = build_from_phi0(phi0);
    benchmark::DoNotOptimize(sys.phi.back());
  }
}
BENCHMARK(BM_BuildFromReflections)->Arg(10)->Arg(20)->Arg(40);

static void BM_CjClosedForm(benchmark::State& state) {
  for (auto _ : state) {
    auto sys = cj_system(1.5, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(sys.kappa.back());
  }
}
BENCHMARK(BM_CjClosedForm)->Arg(12)->Arg(24);

static void BM_TrigMoments(benchmark::State& state) {
  const WeightSpec w = WeightSpec::modified_bessel(1.0);
  for (auto _ : state) {
    auto t = trig_moments(w, 12, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(t.c.back());
  }
}
BENCHMARK(BM_TrigMoments)->Arg(1024)->Arg(4096);

static void BM_MomentCholesky(benchmark::State& state) {
  auto t = trig_moments(WeightSpec::modified_bessel(1.0), 26);
  for (auto _ : state) {
    auto sys = system_from_moments(t, 25, WeightSpec::modified_bessel(1.0));
    benchmark::DoNotOptimize(sys.phi.back());
  }
}
BENCHMARK(BM_MomentCholesky);

static void BM_AberthRoots(benchmark::State& state) {
  auto sys = cj_system(1.0, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto rs = roots(sys.phi.back());
    benchmark::DoNotOptimize(rs.roots.back());
  }
}
BENCHMARK(BM_AberthRoots)->Arg(8)->Arg(16);

static void BM_LadderQuadrature(benchmark::State& state) {
  auto sys = cj_system(1.0, 6);
  auto field = external_field(sys.weight);
  auto pair = ladder_numeric(sys, field, 4, 1024);
  const cplx z(0.31, 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(pair.A(z));
}
BENCHMARK(BM_LadderQuadrature);

static void BM_DpiiCompensated(benchmark::State& state) {
  for (auto _ : state) {
    auto seq = mb_dpii_extend(1.0, 30);
    benchmark::DoNotOptimize(seq.r.back());
  }
}
BENCHMARK(BM_DpiiCompensated);

static void BM_DeltaDualRoute(benchmark::State& state) {
  auto sys = cj_system(1.0, 10);
  for (auto _ : state) {
    auto d = delta(sys, 10);
    benchmark::DoNotOptimize(d.rel_agreement);
  }
}
BENCHMARK(BM_DeltaDualRoute);

BENCHMARK_MAIN();
