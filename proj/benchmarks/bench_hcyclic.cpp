#include <random>

#include <benchmark/benchmark.h>

#include "hcyclic/hcyclic.hpp"

using namespace hcyclic;

namespace {

PlantedInstance planted(int h, int m, bool scramble) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(h * 1000 + m));
  PlantOptions po;
  po.h = h;
  po.block_size = m;
  auto inst = random_planted_instance(rng, po);
  if (scramble) scramble_instance(inst, rng);
  return inst;
}

// Args: h, class size.
void BM_DetectStructure(benchmark::State& state) {
  const auto inst = planted(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), true);
  for (auto _ : state) {
    benchmark::DoNotOptimize(detect_cyclic_structure(inst.matrix, 0.0));
  }
  state.counters["n"] = inst.order();
}
BENCHMARK(BM_DetectStructure)->Args({3, 4})->Args({4, 16})->Args({8, 32});

void BM_Eigendecompose(benchmark::State& state) {
  const auto inst = planted(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), false);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eigendecompose(inst.matrix, 1e-4));
  }
  state.counters["n"] = inst.order();
}
BENCHMARK(BM_Eigendecompose)->Args({3, 4})->Args({4, 8})->Args({4, 16});

void BM_BuildOrbitBasis(benchmark::State& state) {
  const auto inst = planted(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), true);
  const auto s = detect_cyclic_structure(inst.matrix, default_zero_tol(inst.matrix));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_orbit_basis(inst.matrix, s));
  }
  state.counters["n"] = inst.order();
}
BENCHMARK(BM_BuildOrbitBasis)->Args({2, 4})->Args({3, 4})->Args({4, 6})->Unit(benchmark::kMillisecond);

void BM_RotateChain(benchmark::State& state) {
  const int h = static_cast<int>(state.range(0));
  const auto inst = planted(h, static_cast<int>(state.range(1)), false);
  const JordanChain& base = inst.right_chains.front().front();
  for (auto _ : state) {
    for (int k = 0; k < h; ++k) benchmark::DoNotOptimize(rotate_chain(base, k, inst.partition));
  }
  state.counters["n"] = inst.order();
}
BENCHMARK(BM_RotateChain)->Args({3, 4})->Args({8, 32})->Args({16, 64});

void BM_PerronData(benchmark::State& state) {
  std::mt19937_64 rng(5);
  const auto inst = random_nonnegative_cyclic(rng, static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(perron_data(inst.matrix));
  }
  state.counters["n"] = static_cast<double>(inst.matrix.rows());
}
BENCHMARK(BM_PerronData)->Args({2, 4})->Args({3, 8})->Args({4, 10});

}  // namespace

BENCHMARK_MAIN();
