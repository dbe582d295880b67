#include <benchmark/benchmark.h>

#include "qres/dilation.hpp"
#include "qres/quantifiers.hpp"
#include "qres/sampling.hpp"

using namespace qres;

namespace {

QState state_of(int d_a, int d_b) {
  Rng rng(static_cast<std::uint64_t>(d_a * 31 + d_b));
  return random_state(Dims(d_a, d_b), rng);
}

void BM_Entropy(benchmark::State& st) {
  const int d = static_cast<int>(st.range(0));
  const QState s = state_of(d, d);
  for (auto _ : st) benchmark::DoNotOptimize(vn_entropy(s));
}
BENCHMARK(BM_Entropy)->Arg(2)->Arg(4)->Arg(8);

void BM_PartialTrace(benchmark::State& st) {
  const int d = static_cast<int>(st.range(0));
  const QState s = state_of(d, d);
  for (auto _ : st) benchmark::DoNotOptimize(partial_trace(s, Subsystem::A));
}
BENCHMARK(BM_PartialTrace)->Arg(2)->Arg(4)->Arg(8);

void BM_PhiMeas(benchmark::State& st) {
  const int d = static_cast<int>(st.range(0));
  const QState s = state_of(d, d);
  Rng rng(1);
  const ObservableBasis b = random_basis(d, Subsystem::A, rng);
  for (auto _ : st) benchmark::DoNotOptimize(phi_meas(s, b));
}
BENCHMARK(BM_PhiMeas)->Arg(2)->Arg(4)->Arg(8);

void BM_FlowLedger(benchmark::State& st) {
  const QState s = state_of(2, 3);
  Rng rng(2);
  const Destroyer d = MeasureDestroyer{random_basis(2, Subsystem::A, rng)};
  for (auto _ : st) benchmark::DoNotOptimize(flow_ledger(s, d, MonitoringStrength(0.5)));
}
BENCHMARK(BM_FlowLedger);

void BM_DiscordOneWay(benchmark::State& st) {
  const int d = static_cast<int>(st.range(0));
  const QState s = state_of(d, 2);
  SearchConfig cfg;
  cfg.random_restarts = 8;
  for (auto _ : st) benchmark::DoNotOptimize(discord_oneway(s, Subsystem::A, cfg));
}
BENCHMARK(BM_DiscordOneWay)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_Rbn(benchmark::State& st) {
  const QState s = state_of(2, 2);
  for (auto _ : st) benchmark::DoNotOptimize(rbn(s));
}
BENCHMARK(BM_Rbn)->Unit(benchmark::kMillisecond);

void BM_BruteForceGrid(benchmark::State& st) {
  const QState s = state_of(2, 2);
  auto objective = [&](const ObservableBasis& b) { return discord_basis(s, b).value; };
  const int n = static_cast<int>(st.range(0));
  for (auto _ : st) {
    benchmark::DoNotOptimize(brute_force_grid(objective, 2, Subsystem::A, Direction::Minimize, GridResolution{n, 2 * n}));
  }
}
BENCHMARK(BM_BruteForceGrid)->Arg(31)->Arg(61)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
