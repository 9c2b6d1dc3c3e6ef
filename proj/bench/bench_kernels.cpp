// Serial reference against the OpenMP kernels on inputs from Ta*Tb^-1 orbits.

#include <benchmark/benchmark.h>

#include <random>

#include "nt/kernels.hpp"
#include "nt/lamination.hpp"

using namespace nt;

namespace {

const FiniteTypeSurface& torus() {
  static const FiniteTypeSurface t = catalog_surface("torus1");
  return t;
}

// sigma_n for n = 0 .. 10.
const std::vector<Word>& orbit_words() {
  static const std::vector<Word> images = [] {
    const FiniteTypeSurface& t = torus();
    return orbit(t, build_mapping_class(t, "Ta*Tb^-1"), Word{1}, 10, std::size_t{1} << 22, false).images;
  }();
  return images;
}

std::vector<Geodesic> random_leaves(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  std::vector<Geodesic> out;
  while (out.size() < n) {
    const double x = angle(rng), y = angle(rng);
    if (std::abs(x - y) > 1e-3) out.emplace_back(BoundaryPoint(x), BoundaryPoint(y));
  }
  return out;
}

template <long (*Kernel)(const kernels::FatGraph&, const Word&, const Word&, bool)>
void linked_pairs(benchmark::State& state) {
  const kernels::FatGraph g(torus().cyclic_order);
  const Word& u = orbit_words()[state.range(0)];
  const Word& v = orbit_words()[state.range(0) - 1];
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(g, u, v, false));
  state.SetComplexityN(static_cast<long>(u.size()));
}

template <std::vector<Geodesic> (*Kernel)(const FiniteTypeSurface&, const std::vector<Word>&, int)>
void leaf_batch(benchmark::State& state) {
  const std::vector<Word> windows = cyclic_windows(orbit_words()[state.range(0)], 32);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(torus(), windows, 32));
  state.counters["windows"] = static_cast<double>(windows.size());
}

template <double (*Kernel)(const std::vector<Geodesic>&, const std::vector<Geodesic>&)>
void hausdorff(benchmark::State& state) {
  const auto a = random_leaves(state.range(0), 1), b = random_leaves(state.range(0), 2);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(a, b));
}

}  // namespace

BENCHMARK(linked_pairs<kernels::linked_pairs_serial>)->Name("linked_pairs/serial")->DenseRange(4, 8, 2);
BENCHMARK(linked_pairs<kernels::linked_pairs_parallel>)->Name("linked_pairs/parallel")->DenseRange(4, 8, 2);
BENCHMARK(leaf_batch<kernels::leaf_batch_serial>)->Name("leaf_batch/serial")->Arg(6)->Arg(10);
BENCHMARK(leaf_batch<kernels::leaf_batch_parallel>)->Name("leaf_batch/parallel")->Arg(6)->Arg(10);
BENCHMARK(hausdorff<kernels::hausdorff_serial>)->Name("hausdorff/serial")->Arg(64)->Arg(512);
BENCHMARK(hausdorff<kernels::hausdorff_parallel>)->Name("hausdorff/parallel")->Arg(64)->Arg(512);

BENCHMARK_MAIN();
