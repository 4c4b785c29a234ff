// Microbenchmarks for the exact linear algebra core and the homological
// routines built on it, over the same small algebras the tests use.
#include <benchmark/benchmark.h>

#include <random>

#include "frobcat/algebra.hpp"
#include "frobcat/category.hpp"
#include "frobcat/comma.hpp"
#include "frobcat/fp.hpp"
#include "frobcat/homology.hpp"
#include "frobcat/scenario.hpp"

using namespace frobcat;

namespace {

AlgebraPtr dual_numbers() {
  std::vector<std::vector<std::vector<int>>> table = {
      {{1, 0}, {0, 1}},
      {{0, 1}, {0, 0}},
  };
  return std::make_shared<Algebra>(2, 2, table, std::vector<int>{1, 0}, "A");
}

ModulePtr dn_simple(const AlgebraPtr& a) {
  return make_module(a, {FpMatrix::identity(2, 1), FpMatrix(2, 1, 1)}, "k");
}

FpMatrix random_matrix(int p, int rows, int cols, uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> coeff(0, p - 1);
  FpMatrix m(p, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.set(i, j, static_cast<uint8_t>(coeff(rng)));
  return m;
}

}  // namespace

static void Rref(benchmark::State& state) {
  auto m = random_matrix(2, static_cast<int>(state.range(0)), static_cast<int>(state.range(0)), 7);
  for (auto _ : state) {
    auto r = rref(m);
    benchmark::DoNotOptimize(r.rank);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(Rref)->RangeMultiplier(2)->Range(16, 256)->Complexity();

static void KernelBasis(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  auto m = random_matrix(2, n / 2, n, 11);
  for (auto _ : state) {
    auto k = kernel_basis(m);
    benchmark::DoNotOptimize(k.dim());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(KernelBasis)->RangeMultiplier(2)->Range(16, 256)->Complexity();

static void HomBasis(benchmark::State& state) {
  auto a = dual_numbers();
  auto m = free_module(a, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto basis = hom_basis(m, m);
    benchmark::DoNotOptimize(basis.size());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(HomBasis)->RangeMultiplier(2)->Range(1, 8)->Complexity();

static void ExtDims(benchmark::State& state) {
  auto a = dual_numbers();
  ModuleCat cat(a);
  auto k = dn_simple(a);
  for (auto _ : state) {
    auto dims = ext_dims(cat, k, k, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(dims.back());
  }
}
BENCHMARK(ExtDims)->RangeMultiplier(2)->Range(2, 16);

static void CommaExt(benchmark::State& state) {
  auto a = dual_numbers();
  auto ctx = make_comma_context(regular_bimodule(a));
  auto k = dn_simple(a);
  auto za = comma_z_a(ctx, regular_module(a));
  auto socle = make_comma(ctx, regular_module(a), k, FpMatrix::from_rows(2, {{0}, {1}}), "socle");
  CommaCat ccat(ctx);
  for (auto _ : state) {
    auto dims = ext_dims(ccat, za, socle, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(dims.back());
  }
}
BENCHMARK(CommaExt)->DenseRange(2, 6, 2);

static void IsIsomorphic(benchmark::State& state) {
  auto a = dual_numbers();
  auto m = free_module(a, static_cast<int>(state.range(0)));
  auto k = dn_simple(a);
  std::vector<ModulePtr> parts(static_cast<size_t>(state.range(0)), regular_module(a));
  auto n = direct_sum(parts).object;
  SearchBudget budget{4096, 0};
  for (auto _ : state) {
    auto res = is_isomorphic(m, n, budget);
    benchmark::DoNotOptimize(res.verdict);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(IsIsomorphic)->RangeMultiplier(2)->Range(1, 8)->Complexity();

static void EnumerateWindow(benchmark::State& state) {
  auto a = dual_numbers();
  ModuleCat cat(a);
  SearchBudget budget{4096, 0};
  for (auto _ : state) {
    auto win = enumerate_window(cat, static_cast<int>(state.range(0)), budget);
    benchmark::DoNotOptimize(win.modules.size());
  }
}
BENCHMARK(EnumerateWindow)->DenseRange(1, 3);

BENCHMARK_MAIN();
