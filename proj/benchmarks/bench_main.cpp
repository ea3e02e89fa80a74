#include <cmath>
#include <numbers>

#include <benchmark/benchmark.h>

#include "orbitkit/closure.hpp"
#include "orbitkit/ladder.hpp"
#include "orbitkit/orbit.hpp"
#include "orbitkit/radial.hpp"

using namespace orbitkit;

namespace {

// Ten Kepler periods at the given tolerance.
void BM_IntegrateKepler(benchmark::State& state) {
    const CombinedPotential p(-1, -1, 0);
    const double tol = std::pow(10.0, -static_cast<double>(state.range(0)));
    const double E = -0.3, L = 1.0;
    const double period = 2 * std::numbers::pi / std::pow(2 * std::abs(E), 1.5);
    const OrbitState s = pericenter_start(p, L, E);
    for (auto _ : state) benchmark::DoNotOptimize(integrate_orbit(p, s, 10 * period, tol));
}
BENCHMARK(BM_IntegrateKepler)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_ClosureAlkali(benchmark::State& state) {
    const auto p = CombinedPotential::alkali(0.2);
    const double kappa = 1.0 / static_cast<double>(state.range(0));
    const double L = angular_momentum_for_kappa(p, 1 - kappa);
    const double E = 0.5 * circular_orbit(p, L).E;
    for (auto _ : state) benchmark::DoNotOptimize(closure_analysis(p, L, E));
}
BENCHMARK(BM_ClosureAlkali)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_SolveRadialCoulomb(benchmark::State& state) {
    const RadialProblem prob({-1, -1, -0.2}, 1, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(solve_radial(prob, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_SolveRadialCoulomb)->DenseRange(0, 4, 2)->Unit(benchmark::kMillisecond);

void BM_LadderHarmonic(benchmark::State& state) {
    const CombinedPotential p(0.5, 2, 1.5);
    const RadialProblem prob(p, 1, 2);
    const auto sol = solve_radial(prob, 1);
    const auto spec = factorize(p, sol.n);
    for (auto _ : state) benchmark::DoNotOptimize(apply_ladder(sol, spec, LadderDirection::up));
}
BENCHMARK(BM_LadderHarmonic)->Unit(benchmark::kMillisecond);

void BM_BertrandScan(benchmark::State& state) {
    const std::vector<double> nus = {-1.5, -1, -0.5, 0.5, 1, 2, 3};
    const std::vector<double> ecc = {0.1, 0.3, 0.6};
    ScanOptions opt;
    opt.threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(bertrand_scan(nus, ecc, 0.0, opt));
}
BENCHMARK(BM_BertrandScan)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace
BENCHMARK_MAIN();
