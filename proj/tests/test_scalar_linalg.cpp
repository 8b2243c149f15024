#include <algorithm>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "lrcyc/linalg.hpp"
#include "lrcyc/random.hpp"

using namespace lrcyc;

namespace {

constexpr Backend kQ = Backend::Rational;

Scalar q(long n, long d = 1) { return Scalar::from_ratio(n, d, kQ); }

SparseMatrix dense(const std::vector<std::vector<long>>& rows, Backend b = kQ) {
  std::vector<Vector> v;
  for (const auto& r : rows) {
    Vector row;
    for (long x : r) row.push_back(Scalar::from_int(x, b));
    v.push_back(row);
  }
  return SparseMatrix::from_dense(v, rows.empty() ? 0 : rows[0].size(), b);
}

SparseMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, double density) {
  std::vector<SparseMatrix::Entry> e;
  std::bernoulli_distribution keep(density);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (keep(rng)) e.push_back({i, j, random_scalar(rng, kQ)});
  return SparseMatrix::from_entries(r, c, kQ, std::move(e));
}

SparseMatrix permute(const SparseMatrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  std::vector<SparseMatrix::Entry> e;
  for (const auto& x : m.entries()) e.push_back({rows[x.row], cols[x.col], x.value});
  return SparseMatrix::from_entries(m.rows(), m.cols(), m.backend(), std::move(e));
}

}  // namespace

TEST(Scalar, ParsesEachBackend) {
  EXPECT_EQ(parse_scalar("3/6").to_string(), "1/2");
  EXPECT_EQ(parse_scalar("-2").backend(), Backend::Rational);
  EXPECT_EQ(parse_scalar("1/2+3 i").backend(), Backend::Gaussian);
  EXPECT_EQ(parse_scalar("-i").to_string(), "-i");
  EXPECT_EQ(parse_scalar("0.25").backend(), Backend::Approx);
  EXPECT_EQ(parse_scalar("1/3", Backend::Gaussian).backend(), Backend::Gaussian);
  EXPECT_EQ(infer_backend("2/3 i"), Backend::Gaussian);
}

TEST(Scalar, RejectsMalformedText) {
  for (const char* bad : {"", "E11", "abc", "1/0", "x^2", "e"}) EXPECT_THROW(parse_scalar(bad), ParseError) << bad;
  EXPECT_THROW(infer_backend("E11"), ParseError);
}

TEST(Scalar, MixingBackendsThrows) {
  EXPECT_THROW(q(1) + Scalar::one(Backend::Gaussian), BackendMismatch);
  EXPECT_THROW(Scalar::one(Backend::Approx).promote(kQ), BackendMismatch);
  EXPECT_EQ(q(1, 2).promote(Backend::Gaussian) + Scalar::imaginary_unit(Backend::Gaussian), parse_scalar("1/2+i"));
}

TEST(Scalar, GaussianFieldAxioms) {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 200; ++k) {
    Scalar a = random_scalar(rng, Backend::Gaussian), b = random_scalar(rng, Backend::Gaussian);
    EXPECT_EQ((a * b) / b, a);
    EXPECT_EQ((a * b).conj(), a.conj() * b.conj());
    EXPECT_EQ(a - a, Scalar::zero(Backend::Gaussian));
  }
}

TEST(Linalg, RankOfSmallExamples) {
  EXPECT_EQ(rank(dense({{1, 2}, {2, 4}})), 1u);
  EXPECT_EQ(rank(SparseMatrix::identity(4, kQ)), 4u);
  EXPECT_EQ(rank(dense({{0, 0}, {0, 0}})), 0u);
  EXPECT_EQ(rank(dense({{1, 1, 0}, {0, 1, 1}, {1, 0, -1}})), 2u);
}

TEST(Linalg, ApproximateRankUsesRelativePivot) {
  std::vector<Vector> rows{{Scalar(std::complex<double>(1, 0)), Scalar(std::complex<double>(1, 0))},
                           {Scalar(std::complex<double>(1, 0)), Scalar(std::complex<double>(1 + 1e-14, 0))}};
  SparseMatrix m = SparseMatrix::from_dense(rows, 2, Backend::Approx);
  EXPECT_EQ(rank(m), 1u);
  EXPECT_EQ(rank(m, LinalgOptions{1e-16}), 2u);
}

TEST(Linalg, KernelBasisIsAnnihilatedAndComplete) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    SparseMatrix m = random_matrix(rng, 5, 7, 0.4);
    auto ker = kernel_basis(m);
    EXPECT_EQ(ker.size(), m.cols() - rank(m));
    for (const auto& v : ker)
      for (const auto& x : m.apply(v)) EXPECT_TRUE(x.is_zero());
  }
}

TEST(Linalg, CoordinatesInSpan) {
  std::vector<Vector> basis{{q(1), q(0), q(1)}, {q(0), q(1), q(1)}};
  auto c = coordinates_in_span({q(2), q(3), q(5)}, basis);
  ASSERT_TRUE(c);
  EXPECT_EQ((*c)[0], q(2));
  EXPECT_EQ((*c)[1], q(3));
  EXPECT_FALSE(coordinates_in_span({q(1), q(0), q(0)}, basis));
}

TEST(Linalg, HomologyOfShortComplexes) {
  // Q --0--> Q^2 --(1 1)--> Q
  SparseMatrix d_in = dense({{0}, {0}});
  SparseMatrix d_out = dense({{1, 1}});
  EXPECT_EQ(homology_dimension(d_in, d_out), 1u);
  EXPECT_THROW(homology_dimension(dense({{1}, {0}}), d_out), NotAComplex);
}

TEST(Linalg, SubspaceReduceIsLinearAndVanishesOnSpan) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    Subspace s(6, kQ);
    std::vector<SparseRow> added;
    for (int k = 0; k < 3; ++k) {
      SparseMatrix r = random_matrix(rng, 1, 6, 0.5);
      SparseRow row = r.row_list()[0];
      s.add(row);
      added.push_back(row);
    }
    for (const auto& r : added) EXPECT_TRUE(s.contains(r));
    SparseRow u = random_matrix(rng, 1, 6, 0.6).row_list()[0];
    SparseRow v = random_matrix(rng, 1, 6, 0.6).row_list()[0];
    SparseRow sum = u;
    axpy(sum, q(2), v);
    SparseRow lhs = s.reduce(sum), rhs = s.reduce(u);
    axpy(rhs, q(2), s.reduce(v));
    EXPECT_EQ(lhs, rhs);
  }
}

// Homology does not depend on the order of the chain bases.
TEST(LinalgProperty, HomologyInvariantUnderBasisPermutation) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    // d_out * d_in = 0 by construction: d_in = K * G with K spanning ker d_out
    SparseMatrix d_out = random_matrix(rng, 3, 6, 0.5);
    auto ker = kernel_basis(d_out);
    std::vector<SparseMatrix::Entry> e;
    for (std::size_t j = 0; j < 4; ++j)
      for (std::size_t k = 0; k < ker.size(); ++k) {
        Scalar c = std::bernoulli_distribution(0.5)(rng) ? random_scalar(rng, kQ) : q(0);
        for (std::size_t i = 0; i < 6; ++i) e.push_back({i, j, ker[k][i] * c});
      }
    SparseMatrix d_in = SparseMatrix::from_entries(6, 4, kQ, std::move(e));
    const std::size_t h = homology_dimension(d_in, d_out);

    std::vector<std::size_t> pa(3), pb(6), pc(4);
    std::iota(pa.begin(), pa.end(), 0);
    std::iota(pb.begin(), pb.end(), 0);
    std::iota(pc.begin(), pc.end(), 0);
    std::shuffle(pa.begin(), pa.end(), rng);
    std::shuffle(pb.begin(), pb.end(), rng);
    std::shuffle(pc.begin(), pc.end(), rng);
    EXPECT_EQ(homology_dimension(permute(d_in, pb, pc), permute(d_out, pa, pb)), h);
  }
}

TEST(LinalgProperty, ComposeMatchesApply) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    SparseMatrix a = random_matrix(rng, 4, 5, 0.5), b = random_matrix(rng, 5, 3, 0.5);
    Vector v{random_scalar(rng, kQ), random_scalar(rng, kQ), random_scalar(rng, kQ)};
    EXPECT_EQ(a.compose(b).apply(v), a.apply(b.apply(v)));
    EXPECT_EQ(rank(a), rank(a.transposed()));
  }
}
