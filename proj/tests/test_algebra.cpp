#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "lrcyc/ideal.hpp"
#include "lrcyc/random.hpp"
#include "lrcyc/standard_algebras.hpp"

using namespace lrcyc;

namespace {

constexpr Backend kQ = Backend::Rational;

Scalar q(long n) { return Scalar::from_int(n, kQ); }

AlgebraElement random_element(const AlgebraPtr& alg, std::mt19937_64& rng, int parity = -1) {
  AlgebraElement out(alg);
  for (const auto& k : alg->basis())
    if ((parity < 0 || alg->parity(k) == parity) && std::bernoulli_distribution(0.6)(rng))
      out += AlgebraElement::basis(alg, k) * random_scalar(rng, alg->backend());
  return out;
}

}  // namespace

TEST(Algebra, MatrixUnits) {
  auto m2 = matrix_algebra(2);
  EXPECT_EQ(mul(m2.element("E12"), m2.element("E21")), m2.element("E11"));
  EXPECT_TRUE(mul(m2.element("E12"), m2.element("E12")).is_zero());
  EXPECT_EQ(super_commutator(m2.element("E12"), m2.element("E21")), m2.element("E11") - m2.element("E22"));
  EXPECT_EQ(m2.algebra->dimension(), 4u);
}

TEST(Algebra, GradedEndomorphismParities) {
  auto ge = graded_endomorphisms(1, 1);
  const auto& F = ge.element("F");
  EXPECT_EQ(F.parity(), 1);
  EXPECT_EQ(mul(F, F), AlgebraElement::unit(ge.algebra));
  // odd elements anticommute up to the supercommutator: [F, F] = 2 F^2
  EXPECT_EQ(super_commutator(F, F), AlgebraElement::unit(ge.algebra) * q(2));
}

TEST(Algebra, TableRejectsNonAssociativeData) {
  // e0 = 1, e1 with e1 e1 = e0 + e1 is fine; breaking the unit law must fail
  std::vector<Coeffs> table{{{BasisKey{0, 0}, q(1)}}, {{BasisKey{1, 0}, q(1)}}, {{BasisKey{1, 0}, q(1)}},
                            {{BasisKey{1, 0}, q(1)}}};
  EXPECT_NO_THROW(TableAlgebra::create("ok", {{"1", 0}, {"a", 0}}, {{BasisKey{0, 0}, q(1)}}, table, kQ));
  table[2] = Coeffs{{BasisKey{0, 0}, q(1)}};  // a * 1 = 1
  EXPECT_THROW(TableAlgebra::create("bad", {{"1", 0}, {"a", 0}}, {{BasisKey{0, 0}, q(1)}}, table, kQ),
               PreconditionError);
}

TEST(Algebra, QuantumTorusCommutation) {
  auto t = quantum_torus(0.3);
  const auto& U = t.element("U");
  const auto& V = t.element("V");
  AlgebraElement lhs = mul(U, V);
  AlgebraElement rhs = mul(V, U) * Scalar(std::exp(std::complex<double>(0, 2 * std::numbers::pi * 0.3)));
  EXPECT_LT((lhs - rhs).max_magnitude(), 1e-15);
}

TEST(AlgebraProperty, AssociativityOnRandomElements) {
  std::mt19937_64 rng(31);
  for (auto alg : {matrix_algebra(2).algebra, graded_endomorphisms(1, 1).algebra, grassmann(3).algebra,
                   super_truncated().algebra}) {
    for (int k = 0; k < 50; ++k) {
      auto x = random_element(alg, rng), y = random_element(alg, rng), z = random_element(alg, rng);
      EXPECT_EQ(mul(mul(x, y), z), mul(x, mul(y, z))) << alg->kind();
    }
  }
}

TEST(AlgebraProperty, TorusAssociativityOnSampledKeys) {
  auto t = quantum_torus(0.37);
  std::vector<std::array<BasisKey, 3>> triples;
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> d(-5, 5);
  for (int k = 0; k < 200; ++k)
    triples.push_back({BasisKey{d(rng), d(rng)}, BasisKey{d(rng), d(rng)}, BasisKey{d(rng), d(rng)}});
  EXPECT_LT(associativity_residual(*t.algebra, triples), 1e-12);
}

TEST(Derivation, StandardDerivationsSatisfyLeibniz) {
  for (auto sa : {truncated_polynomial(3), graded_endomorphisms(1, 1), grassmann(3), super_truncated()})
    for (const auto& d : sa.derivations) EXPECT_EQ(check_leibniz(d, all_basis_pairs(sa.algebra)), 0.0) << d.name();
}

TEST(Derivation, CircleDerivationCarriesTwoPi) {
  auto c = circle_laurent();
  const auto& X = c.derivation("X");
  EXPECT_EQ(X.two_pi_power(), 1);
  auto z3 = mul(mul(c.element("z"), c.element("z")), c.element("z"));
  EXPECT_EQ(apply_derivation(X, z3), z3 * parse_scalar("3 i"));
}

TEST(Derivation, NonDerivationIsDetected) {
  auto tp = truncated_polynomial(3);
  // x -> 1, x^2 -> 0 violates D(x^2) = 2 x D(x)
  auto bad = SuperDerivation::from_table("bad", 0, tp.algebra, {{BasisKey{1, 0}, {{BasisKey{0, 0}, q(1)}}}});
  EXPECT_GT(check_leibniz(bad, all_basis_pairs(tp.algebra)), 0.0);
}

TEST(Ideal, PowersOfTheMaximalIdeal) {
  auto tp = truncated_polynomial(3);
  const auto& x = tp.element("x");
  EXPECT_EQ(ideal_power_basis(tp.algebra, {x}, 1)->dimension(), 2u);
  EXPECT_EQ(ideal_power_basis(tp.algebra, {x}, 2)->dimension(), 1u);
  EXPECT_EQ(ideal_power_basis(tp.algebra, {x}, 3)->dimension(), 0u);
  auto j2 = ideal_power_basis(tp.algebra, {x}, 2);
  EXPECT_TRUE(j2->contains(tp.element("x^2").coeffs()));
  EXPECT_FALSE(j2->contains(x.coeffs()));
}

TEST(Ideal, MatrixIdealsAreTrivialOrWhole) {
  auto m2 = matrix_algebra(2);
  EXPECT_EQ(ideal_power_basis(m2.algebra, {m2.element("E12")}, 1)->dimension(), 4u);
}

TEST(Ideal, PartialTraceSpaces) {
  auto m2 = matrix_algebra(2);
  EXPECT_EQ(partial_trace_space(m2.algebra, whole_algebra(m2.algebra, 1)).size(), 1u);
  auto ge = graded_endomorphisms(1, 1);
  auto str = partial_trace_space(ge.algebra, whole_algebra(ge.algebra, 1));
  ASSERT_EQ(str.size(), 1u);
  EXPECT_EQ(str[0].parity(), 0);
  auto tp = truncated_polynomial(3);
  // commutative: every functional on J = (x) is a partial trace
  EXPECT_EQ(partial_trace_space(tp.algebra, ideal_power_basis(tp.algebra, {tp.element("x")}, 1)).size(), 2u);
}

TEST(Ideal, PartialTraceVanishesOnCommutators) {
  auto ge = graded_endomorphisms(2, 1);
  auto jp = whole_algebra(ge.algebra, 1);
  for (const auto& tau : partial_trace_space(ge.algebra, jp)) EXPECT_EQ(supercommutator_residual(tau), 0.0);
  auto m2 = matrix_algebra(2);
  auto c11 = restrict_functional("c11", whole_algebra(m2.algebra, 1), Coeffs{{*m2.algebra->find("E11"), q(1)}});
  EXPECT_GT(supercommutator_residual(c11), 0.0);
}

TEST(Ideal, EvaluationOutsideTheIdealThrows) {
  auto tp = truncated_polynomial(3);
  auto j2 = ideal_power_basis(tp.algebra, {tp.element("x")}, 2);
  auto traces = partial_trace_space(tp.algebra, j2);
  ASSERT_FALSE(traces.empty());
  EXPECT_THROW(traces[0].evaluate(tp.element("x").coeffs()), OutsideIdeal);
}
