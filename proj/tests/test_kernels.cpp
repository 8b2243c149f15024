#include <random>

#include <gtest/gtest.h>

#include "lrcyc/kernels.hpp"
#include "lrcyc/random.hpp"
#include "support/contexts.hpp"

using namespace lrcyc;

namespace {

Coeffs random_torus_element(std::mt19937_64& rng, int radius, int rows) {
  Coeffs c;
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n = -rows; n <= rows; ++n)
    for (int m = -radius; m <= radius; ++m) c[BasisKey{m, n}] = Scalar(std::complex<double>(u(rng), u(rng)));
  return c;
}

}  // namespace

TEST(Kernels, TorusProductParallelMatchesSerial) {
  std::mt19937_64 rng(7);
  QuantumTorus t(0.37);
  for (int trial = 0; trial < 5; ++trial) {
    Coeffs x = random_torus_element(rng, 20 + trial, 1), y = random_torus_element(rng, 15, 2);
    Coeffs s = kernels::torus_product_serial(t, x, y);
    Coeffs p = kernels::torus_product_parallel(t, x, y);
    ASSERT_EQ(s.size(), p.size());
    double worst = 0.0;
    for (const auto& [k, v] : s) worst = std::max(worst, (v - p.at(k)).magnitude());
    EXPECT_LT(worst, 1e-12);
  }
}

TEST(Kernels, SparseTorusInputsFallBackToSerial) {
  QuantumTorus t(0.3);
  Coeffs x{{BasisKey{100, 0}, Scalar(std::complex<double>(1, 0))}, {BasisKey{-100, 1}, Scalar(std::complex<double>(2, 0))}};
  Coeffs s = kernels::torus_product_serial(t, x, x);
  Coeffs p = kernels::torus_product_parallel(t, x, x);
  ASSERT_EQ(s.size(), p.size());
  for (const auto& [k, v] : s) EXPECT_EQ(v, p.at(k));
}

TEST(Kernels, ColumnAssemblyIsIdentical) {
  auto alg = matrix_algebra(2).algebra;
  for (int p = 1; p <= 3; ++p) {
    SparseMatrix b = b_matrix(alg, p);
    auto cols = b.column_list();
    kernels::ColumnFn fn = [&](std::size_t j) { return cols[j]; };
    SparseMatrix s = kernels::assemble_columns_serial(b.rows(), b.cols(), Backend::Rational, fn);
    SparseMatrix par = kernels::assemble_columns_parallel(b.rows(), b.cols(), Backend::Rational, fn);
    ASSERT_EQ(s.nonzeros(), par.nonzeros());
    for (std::size_t i = 0; i < s.nonzeros(); ++i) {
      EXPECT_EQ(s.entries()[i].row, par.entries()[i].row);
      EXPECT_EQ(s.entries()[i].col, par.entries()[i].col);
      EXPECT_EQ(s.entries()[i].value, par.entries()[i].value);
    }
  }
}

TEST(Kernels, SampleMaximumIsScheduleIndependent) {
  kernels::SampleFn fn = [](std::size_t i) {
    return std::vector<double>{static_cast<double>((i * 37) % 101), static_cast<double>(i % 7)};
  };
  EXPECT_EQ(kernels::max_over_samples_serial(500, 2, fn), kernels::max_over_samples_parallel(500, 2, fn));
}

TEST(Kernels, LemmaSweepSerialAndParallelAgree) {
  for (const auto& [name, ctx] : lrcyc::testing::admissible_contexts(2)) {
    LemmaSweep s = lemma_sweep(ctx, 30, 3, BVariant::Full, false);
    LemmaSweep p = lemma_sweep(ctx, 30, 3, BVariant::Full, true);
    EXPECT_EQ(s.lemma1_max, p.lemma1_max) << name;
    EXPECT_EQ(s.lemma2_max, p.lemma2_max) << name;
    EXPECT_EQ(s.stokes_max, p.stokes_max) << name;
  }
}
