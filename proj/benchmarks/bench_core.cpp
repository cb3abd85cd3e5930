#include "vlp/bounds.hpp"
#include "vlp/estimators.hpp"
#include "vlp/scene.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace vlp;

void BM_ChannelDerivatives(benchmark::State& state) {
    const Scene s = reference_scene();
    Vec3 p(0.5, 0.5, 0.85);
    for (auto _ : state) {
        for (const auto& led : s.leds) benchmark::DoNotOptimize(channel_derivatives(led, p, s.rx));
        p.x() += 1e-9;
    }
}
BENCHMARK(BM_ChannelDerivatives);

void BM_EstimatorSetup(benchmark::State& state) {
    const Scene s = reference_scene();
    for (auto _ : state) benchmark::DoNotOptimize(PositionEstimator(s.leds, s.rx));
    state.SetLabel("41x41x31 gain table");
}
BENCHMARK(BM_EstimatorSetup)->Unit(benchmark::kMillisecond);

void BM_Estimate(benchmark::State& state) {
    const Scene s = reference_scene();
    const PositionEstimator est(s.leds, s.rx);
    const auto scenario = static_cast<Scenario>(state.range(0));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        const MeasurementSet m =
            simulate_measurements(s.leds, s.rx, s.true_position, s.t_hours, s.noise, seed++);
        benchmark::DoNotOptimize(est.estimate({scenario, {}}, m, s.noise));
    }
    state.SetLabel(std::string(scenario_name(scenario)));
}
BENCHMARK(BM_Estimate)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_PseudoTrue(benchmark::State& state) {
    const Scene s = reference_scene();
    for (auto _ : state) benchmark::DoNotOptimize(pseudo_true(s));
}
BENCHMARK(BM_PseudoTrue)->Unit(benchmark::kMillisecond);

void BM_BoundReports(benchmark::State& state) {
    const Scene s = reference_scene();
    const PseudoTrueResult pt = pseudo_true(s);
    for (auto _ : state) {
        benchmark::DoNotOptimize(mcrb(s, pt));
        benchmark::DoNotOptimize(crb_scenario2(s, s.true_position, 1e-5));
        benchmark::DoNotOptimize(crb_scenario3(s, s.true_position));
    }
}
BENCHMARK(BM_BoundReports);

}  // namespace

BENCHMARK_MAIN();
