// Serial reference kernels against their OpenMP counterparts.

#include <random>

#include <benchmark/benchmark.h>

#include "lrcyc/hochschild.hpp"
#include "lrcyc/kernels.hpp"
#include "lrcyc/pairing.hpp"
#include "support/contexts.hpp"

using namespace lrcyc;

namespace {

Coeffs torus_element(int radius, int rows, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Coeffs c;
  for (int n = -rows; n <= rows; ++n)
    for (int m = -radius; m <= radius; ++m) c[BasisKey{m, n}] = Scalar(std::complex<double>(u(rng), u(rng)));
  return c;
}

template <bool Parallel>
void BM_TorusProduct(benchmark::State& state) {
  QuantumTorus t(0.3);
  const int radius = static_cast<int>(state.range(0));
  Coeffs x = torus_element(radius, 1, 1), y = torus_element(radius, 1, 2);
  for (auto _ : state) {
    Coeffs z = Parallel ? kernels::torus_product_parallel(t, x, y) : kernels::torus_product_serial(t, x, y);
    benchmark::DoNotOptimize(z);
  }
}

template <bool Parallel>
void BM_AssembleColumns(benchmark::State& state) {
  auto alg = matrix_algebra(2).algebra;
  const int p = static_cast<int>(state.range(0));
  SparseMatrix b = b_matrix(alg, p);
  auto cols = b.column_list();
  kernels::ColumnFn fn = [&](std::size_t j) { return cols[j]; };
  for (auto _ : state) {
    SparseMatrix m = Parallel ? kernels::assemble_columns_parallel(b.rows(), b.cols(), Backend::Rational, fn)
                              : kernels::assemble_columns_serial(b.rows(), b.cols(), Backend::Rational, fn);
    benchmark::DoNotOptimize(m);
  }
}

template <bool Parallel>
void BM_LemmaSweep(benchmark::State& state) {
  PairingContext ctx = lrcyc::testing::matrix_context(2);
  const auto samples = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    LemmaSweep s = lemma_sweep(ctx, samples, 11, BVariant::Full, Parallel);
    benchmark::DoNotOptimize(s);
  }
}

}  // namespace

BENCHMARK_TEMPLATE(BM_TorusProduct, false)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_TorusProduct, true)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_AssembleColumns, false)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_AssembleColumns, true)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_LemmaSweep, false)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_LemmaSweep, true)->Arg(100)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
