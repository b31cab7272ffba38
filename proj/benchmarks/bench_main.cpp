#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "g3traj/fresnel.hpp"
#include "g3traj/g3_curve.hpp"
#include "g3traj/path_planner.hpp"
#include "g3traj/velocity_profile.hpp"

using namespace g3traj;

namespace {

const CurvatureLimits kLimits{};

void BM_QuadraticPhase(benchmark::State& state) {
  const PhasePolynomial p = PhasePolynomial::quadratic(0.3, 1.2, -0.4);
  for (auto _ : state) benchmark::DoNotOptimize(integrate_quadratic_phase(p, -2.0, 3.0));
}
BENCHMARK(BM_QuadraticPhase);

void BM_CubicPhase(benchmark::State& state) {
  const PhasePolynomial p = PhasePolynomial::cubic(0.3, 1.2, -0.4, 0.05);
  const double tol = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(integrate_cubic_phase(p, -2.0, 3.0, tol));
}
BENCHMARK(BM_CubicPhase)->Arg(4)->Arg(6)->Arg(9);

void BM_StateAt(benchmark::State& state) {
  const G3CurveSpec c = make_g3_curve({0, 0, 0, 0, 0}, 0.15, 0.0, 12.0, kLimits);
  double s = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(state_at(c, s));
    s = s + 0.37 > c.length() ? 0.0 : s + 0.37;
  }
}
BENCHMARK(BM_StateAt);

void BM_PlanPath(benchmark::State& state) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> pos(-20.0, 20.0), th(-3.14159, 3.14159);
  std::vector<std::pair<PathState, PathState>> cases;
  for (int i = 0; i < 32; ++i) {
    cases.push_back({{pos(rng), pos(rng), th(rng), 0.0, 0.0}, {pos(rng), pos(rng), th(rng), 0.0, 0.0}});
  }
  std::size_t k = 0;
  for (auto _ : state) {
    const auto& [s, g] = cases[k++ % cases.size()];
    benchmark::DoNotOptimize(plan_path(s, g, kLimits, kLimits.rho_max));
  }
}
BENCHMARK(BM_PlanPath)->Unit(benchmark::kMicrosecond);

void BM_OptimizeWaypoints(benchmark::State& state) {
  const G3Path path = plan_path({0, 0, 0, 0, 0}, {50, 6, 0, 0, 0}, kLimits, kLimits.rho_max).path;
  const WaypointVector w = s_curve_waypoints(10.0, 10.0, path.length());
  DescentOptions opt;
  opt.max_iters = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(optimize_waypoints(path, 10.0, 10.0, {}, {}, w, opt));
}
BENCHMARK(BM_OptimizeWaypoints)->Arg(50)->Arg(500)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
