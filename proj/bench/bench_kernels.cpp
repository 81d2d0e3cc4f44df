// Serial reference vs OpenMP kernels on the two batch workloads.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "pipeclimb/batch.hpp"
#include "pipeclimb/simulator.hpp"

using namespace pipeclimb;

namespace {

std::vector<BalanceProblem> make_problems(std::size_t n) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> stiff(0.01, 100.0), req(-50.0, 50.0), off(-10.0, 10.0),
        cubic(0.0, 5.0), g(0.2, 5.0), w(0.0, 50.0);
    std::vector<BalanceProblem> out(n);
    for (auto& p : out) {
        p.input_speed = w(rng);
        p.config = {g(rng), g(rng), 1.0};
        for (auto& l : p.loads) l = {stiff(rng), 1.0, req(rng), off(rng), cubic(rng)};
    }
    return out;
}

Scenario make_scenario() {
    Scenario sc;
    sc.network = build_network({Straight{500.0}, Bend{300.0, 90.0, 0.0}, Straight{350.0},
                                Bend{300.0, 180.0, 0.0}},
                               60.0);
    sc.robot.contact_radius_mm = 50.0;
    sc.input_speed_rad_s = 2.5;
    return sc;
}

template <auto Kernel>
void BM_TorqueBalance(benchmark::State& state) {
    const auto problems = make_problems(static_cast<std::size_t>(state.range(0)));
    std::vector<BalanceOutcome> out(problems.size());
    for (auto _ : state) {
        Kernel(problems, out, SolverOptions{});
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Kernel>
void BM_OrientationSweep(benchmark::State& state) {
    const Scenario sc = make_scenario();
    std::vector<double> thetas;
    for (int i = 0; i < state.range(0); ++i) thetas.push_back(360.0 * i / static_cast<double>(state.range(0)));
    for (auto _ : state) {
        auto entries = Kernel(sc, thetas);
        benchmark::DoNotOptimize(entries.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_TorqueBalance<solve_torque_balance_batch_serial>)->Name("torque_balance/serial")->Range(64, 16384);
BENCHMARK(BM_TorqueBalance<solve_torque_balance_batch>)->Name("torque_balance/openmp")->Range(64, 16384);
BENCHMARK(BM_OrientationSweep<sweep_orientation_serial>)->Name("orientation_sweep/serial")->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OrientationSweep<sweep_orientation>)->Name("orientation_sweep/openmp")->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
