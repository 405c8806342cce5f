#include <benchmark/benchmark.h>

#include "gifstile/analysis.hpp"
#include "gifstile/attractor.hpp"
#include "gifstile/geometry.hpp"
#include "gifstile/io.hpp"
#include "gifstile/pretree.hpp"
#include "gifstile/render.hpp"
#include "gifstile/tiling.hpp"

namespace {

using namespace gifstile;

const Gifs& ammann() {
  static const Gifs g = load_gifs("builtin:ammann");
  return g;
}

ThetaParam ammann_theta() {
  const Digraph& g = ammann().graph();
  return ThetaParam(g, {}, {g.edge_index("1"), g.edge_index("2")});
}

void BM_BalancedPatch(benchmark::State& state) {
  const ThetaParam th = ammann_theta();
  const int k = static_cast<int>(state.range(0));
  std::size_t tiles = 0;
  for (auto _ : state) {
    const Patch p = patch(ammann(), th, kind::Balanced{}, k);
    tiles = p.tiles.size();
    benchmark::DoNotOptimize(p.tiles.data());
  }
  state.counters["tiles"] = static_cast<double>(tiles);
}
BENCHMARK(BM_BalancedPatch)->DenseRange(4, 16, 4)->Unit(benchmark::kMicrosecond);

void BM_UniformSquarePatch(benchmark::State& state) {
  static const Gifs sq = load_gifs("builtin:square");
  const Digraph& g = sq.graph();
  const ThetaParam th(g, {}, {g.edge_index("1"), g.edge_index("2"), g.edge_index("3"), g.edge_index("4")});
  for (auto _ : state) benchmark::DoNotOptimize(patch(sq, th, kind::Uniform{}, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_UniformSquarePatch)->DenseRange(2, 6, 2)->Unit(benchmark::kMicrosecond);

void BM_Attractor(benchmark::State& state) {
  const int iters = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(attractor(ammann(), iters, std::size_t{1} << 16));
}
BENCHMARK(BM_Attractor)->Arg(10)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_SelfConsistency(benchmark::State& state) {
  const AttractorApprox a = attractor(ammann(), 14, std::size_t{1} << 16);
  for (auto _ : state) benchmark::DoNotOptimize(self_consistency(ammann(), a));
}
BENCHMARK(BM_SelfConsistency)->Unit(benchmark::kMillisecond);

void BM_Equivalence(benchmark::State& state) {
  const Digraph& g = ammann().graph();
  const EdgeIndex e1 = g.edge_index("1"), e2 = g.edge_index("2");
  const ThetaParam a(g, {e2, e1, e1}, {e1, e2, e2, e1, e2});
  const ThetaParam b(g, {e1}, {e2, e1, e2, e1, e2});
  for (auto _ : state) benchmark::DoNotOptimize(params_equivalent(g, a, b));
}
BENCHMARK(BM_Equivalence);

void BM_PairwiseOverlap(benchmark::State& state) {
  const ComponentShapes shapes(ammann());
  const Patch p = patch(ammann(), ammann_theta(), kind::Balanced{}, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pairwise_overlap(shapes, p, 200, 1));
  state.counters["tiles"] = static_cast<double>(p.tiles.size());
}
BENCHMARK(BM_PairwiseOverlap)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_RenderSvg(benchmark::State& state) {
  const Patch p = patch(ammann(), ammann_theta(), kind::Balanced{}, 10);
  for (auto _ : state) benchmark::DoNotOptimize(render_patch_svg(ammann(), p));
}
BENCHMARK(BM_RenderSvg)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
