#include <benchmark/benchmark.h>

#include "chainctl/controllability.hpp"
#include "chainctl/hamiltonians.hpp"
#include "chainctl/linalg.hpp"
#include "chainctl/optimizer.hpp"
#include "chainctl/propagation.hpp"
#include "chainctl/pulse.hpp"

using namespace chainctl;

// Objective plus exact gradient for a 64-step pulse; range(0) is N.
static void BM_ObjectiveGradient(benchmark::State& state) {
  const int spins = static_cast<int>(state.range(0));
  const ControlProblem problem = ControlProblem::ground_state(ChainSpec::uniform(spins));
  const Pulse pulse = random_pulse(64, 0.5 * spins, 7);
  for (auto _ : state) benchmark::DoNotOptimize(objective_and_gradient(pulse, problem));
  state.SetLabel("dim " + std::to_string(problem.blocks().front().drift.dim()));
}
BENCHMARK(BM_ObjectiveGradient)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

static void BM_Eigh(benchmark::State& state) {
  const int spins = static_cast<int>(state.range(0));
  const HermitianOperator h0 = build_h0(ChainSpec::uniform(spins), spins / 2);
  for (auto _ : state) benchmark::DoNotOptimize(eigh(h0));
}
BENCHMARK(BM_Eigh)->DenseRange(4, 12, 2)->Unit(benchmark::kMicrosecond);

static void BM_LindbladEvolve(benchmark::State& state) {
  const int spins = static_cast<int>(state.range(0));
  const ChainSpec spec = ChainSpec::uniform(spins);
  const PureState g = chain_ground_state(spec);
  const DensityBlock rho0{g.excitations, g.amplitudes * g.amplitudes.adjoint()};
  const Pulse pulse = random_pulse(32, 0.5 * spins, 11);
  const LindbladSpec lind{0.05, DephasingModel::AllSpins};
  for (auto _ : state) benchmark::DoNotOptimize(evolve_lindblad(pulse, rho0, lind, spec, 8));
}
BENCHMARK(BM_LindbladEvolve)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

static void BM_LieClosure(benchmark::State& state) {
  const int spins = static_cast<int>(state.range(0));
  const ChainSpec spec = ChainSpec::uniform(spins);
  const HermitianOperator h0 = build_h0(spec, spins / 2);
  const HermitianOperator h1 = build_h1(spec, spins / 2);
  for (auto _ : state) benchmark::DoNotOptimize(dynamical_lie_dimension(h0, h1));
}
BENCHMARK(BM_LieClosure)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
