#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "bosent/entanglement.hpp"
#include "bosent/modes.hpp"
#include "bosent/robustness.hpp"

using namespace bosent;

namespace {

DensityMatrix random_density(const BasisPtr& b, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  const auto d = static_cast<Eigen::Index>(b->dim());
  Matrix a(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) a(i, j) = {g(rng), g(rng)};
  return DensityMatrix::from_trusted(b, a * a.adjoint());
}

}  // namespace

static void BM_Enumerate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int modes = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(make_basis(n, modes, modes / 2, 1000000));
  state.counters["D"] = static_cast<double>(make_basis(n, modes, modes / 2, 1000000)->dim());
}
BENCHMARK(BM_Enumerate)->Args({4, 4})->Args({8, 4})->Args({6, 6})->Args({10, 6});

static void BM_Negativity(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int modes = static_cast<int>(state.range(1));
  const auto rho = random_density(make_basis(n, modes, modes / 2), 1);
  for (auto _ : state) benchmark::DoNotOptimize(negativity(rho));
  state.counters["D"] = static_cast<double>(rho.basis().dim());
}
BENCHMARK(BM_Negativity)->Args({2, 4})->Args({4, 4})->Args({6, 4})->Args({3, 6})->Unit(benchmark::kMillisecond);

static void BM_PptRobustness(benchmark::State& state) {
  const auto d = static_cast<Eigen::Index>(state.range(0));
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  Matrix a(d * d, d * d);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = {g(rng), g(rng)};
  Matrix block = a * a.adjoint();
  block /= block.trace();
  for (auto _ : state) benchmark::DoNotOptimize(ppt_robustness(block, d, d, RobustnessKind::generalized));
}
BENCHMARK(BM_PptRobustness)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_InducedUnitary(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int modes = static_cast<int>(state.range(1));
  const auto b = make_basis(n, modes, modes / 2);
  std::mt19937_64 rng(3);
  const auto u = random_mode_unitary(modes, rng);
  for (auto _ : state) benchmark::DoNotOptimize(induced_unitary(u, *b));
  state.counters["D"] = static_cast<double>(b->dim());
}
BENCHMARK(BM_InducedUnitary)->Args({2, 2})->Args({8, 2})->Args({3, 4})->Args({5, 4})->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
