#include <benchmark/benchmark.h>

#include <padlab/carving.hpp>
#include <padlab/decomposition.hpp>
#include <padlab/fixtures.hpp>
#include <padlab/heisenberg.hpp>
#include <padlab/lll.hpp>

using namespace padlab;

namespace {

void BM_Carve(benchmark::State& state) {
  const auto space = integer_segment(static_cast<double>(state.range(0)));
  const Net net = build_net(space, 3, 3);
  const TexpParams law(0.05 / 9, 9, 129);
  const auto coloring = greedy_color_band(net, 2 * 129.0);
  Rng rng(1);
  for (auto _ : state) {
    const auto radii = RadiusAssignment::sample(net.size(), law, rng);
    benchmark::DoNotOptimize(carve(space, net, coloring, radii));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Carve)->Arg(1000)->Arg(3000)->Arg(10000)->Complexity();

void BM_CutProbabilityMc(benchmark::State& state) {
  const auto space = integer_segment(5000);
  const Net net = build_net(space, 1, 1);
  const TgeoParams law(0.01, 1842);
  std::vector<Index> centers;
  for (Index c = 2000; c < 3000; c += 10) centers.push_back(c);
  for (auto _ : state)
    benchmark::DoNotOptimize(cut_probability_mc(space, net, law, 3, centers,
                                                static_cast<std::size_t>(state.range(0)), 7));
}
BENCHMARK(BM_CutProbabilityMc)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_VerifyPadded(benchmark::State& state) {
  const auto space = integer_segment(static_cast<double>(state.range(0)));
  const auto csp = texp_csp(build_net(space, 3, 3), TexpSchedule(3, 3, 0.05, 20, 2));
  const auto cert = certify_decomposition(csp, 1, 500);
  for (auto _ : state) benchmark::DoNotOptimize(verify_padded(cert.decomposition));
}
BENCHMARK(BM_VerifyPadded)->Arg(1000)->Arg(3000)->Unit(benchmark::kMillisecond);

void BM_MoserTardos(benchmark::State& state) {
  const auto space = integer_segment(3000);
  const auto csp = texp_csp(build_net(space, 3, 3), TexpSchedule(3, 3, 0.05, 20, 2));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(moser_tardos(csp, seed++, 500));
}
BENCHMARK(BM_MoserTardos)->Unit(benchmark::kMillisecond);

void BM_HeisenbergBallSizes(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(heisenberg_ball_sizes(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_HeisenbergBallSizes)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
