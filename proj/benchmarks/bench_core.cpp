#include <benchmark/benchmark.h>

#include <random>

#include "nialg/linalg.hpp"
#include "nialg/nf.hpp"
#include "nialg/variety.hpp"

using namespace nialg;

// A fresh engine each iteration, so nothing is served from the cache.
static void BM_Dimension(benchmark::State& state) {
  const VarietyPresentation v = VarietyLibrary::global().get("ls_a2");
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    Consequences engine(v);
    benchmark::DoNotOptimize(engine.dimension(n));
  }
}
BENCHMARK(BM_Dimension)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

static SparseMatrix random_matrix(std::uint32_t rows, std::uint32_t cols, unsigned seed) {
  std::mt19937 rng(seed);
  SparseMatrix m;
  m.ncols = cols;
  for (std::uint32_t r = 0; r < rows; ++r) {
    RatVec row;
    for (std::uint32_t c = 0; c < cols; ++c)
      if (rng() % 8 == 0) row.emplace_back(c, Rational(static_cast<long>(rng() % 7) + 1));
    m.rows.push_back(std::move(row));
  }
  return m;
}

static void BM_Rref(benchmark::State& state) {
  const auto mode = static_cast<RrefMode>(state.range(1));
  SparseMatrix m = random_matrix(static_cast<std::uint32_t>(state.range(0)), static_cast<std::uint32_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(rref(m, mode));
}
BENCHMARK(BM_Rref)
    ->ArgsProduct({{60, 120}, {static_cast<long>(RrefMode::exact), static_cast<long>(RrefMode::modular_certified)}})
    ->Unit(benchmark::kMillisecond);

static void BM_NormalForm(benchmark::State& state) {
  const auto f = static_cast<Family>(state.range(0));
  std::mt19937_64 rng(9);
  std::vector<Monomial> inputs;
  for (int i = 0; i < 64; ++i) inputs.push_back(random_monomial(7, rng));
  normal_form(f, inputs.front());
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(normal_form(f, inputs[i++ % inputs.size()]));
}
BENCHMARK(BM_NormalForm)->DenseRange(0, 2)->Unit(benchmark::kMicrosecond);

static void BM_VerifyBasis(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_basis(Family::a2, n, VerifyMode::spanning_only).passed);
}
BENCHMARK(BM_VerifyBasis)->DenseRange(4, 6)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
