#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "lrcyc/examples.hpp"
#include "lrcyc/random.hpp"
#include "support/contexts.hpp"

using namespace lrcyc;
namespace t = lrcyc::testing;

namespace {

Scalar q(long n) { return Scalar::from_int(n, Backend::Rational); }

// Test-side evaluation for even L and even A:
//   sum_sigma sgn(sigma) tau(a_0 X_s1(a_1) ... X_sp(a_p))
Scalar oracle_pair(const PairingContext& ctx, std::size_t trace, std::vector<int> word,
                   const std::vector<AlgebraElement>& a) {
  Scalar total = Scalar::zero(ctx.target->backend());
  std::vector<int> perm(word.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
  do {
    int inv = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t j = i + 1; j < perm.size(); ++j) inv += perm[i] > perm[j];
    AlgebraElement prod = a[0];
    for (std::size_t i = 0; i < perm.size(); ++i)
      prod = mul(prod, apply_derivation(*ctx.lr->action(word[perm[i]]), a[i + 1]));
    Scalar v = ctx.traces.traces[trace].evaluate(prod.coeffs());
    total += inv % 2 ? -v : v;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

LRChain random_cycle_shift(const PairingContext& ctx, std::mt19937_64& rng) {
  return lr_boundary(random_lr_chain(ctx.lr, ctx.traces.module, ctx.p + 1, rng));
}

}  // namespace

TEST(Pairing, MatrixDegreeOneExample) {
  PairingContext ctx = t::matrix_context(1);
  auto m2 = ctx.target;
  LRChain tau = trace_chain(ctx, 0, {"X"}, 1);
  auto E12 = AlgebraElement::basis(m2, *m2->find("E12"));
  auto E21 = AlgebraElement::basis(m2, *m2->find("E21"));
  // tr(E12 [E11, E21]) = -tr(E12 E21)
  EXPECT_EQ(pair(ctx, tau, HochschildChain::tensor({E12, E21})).coefficient, q(-1));
  EXPECT_EQ(pair_elements(ctx, tau, {E12, E21}).coefficient, q(-1));
}

TEST(Pairing, AgreesWithPermutationSumOracle) {
  std::mt19937_64 rng(71);
  for (int p = 1; p <= 2; ++p)
    for (const auto& [name, ctx] : t::admissible_contexts(p)) {
      if (name.find("End") != std::string::npos || name.find("gl") != std::string::npos) continue;
      const auto words = normal_words(*ctx.lr, p);
      if (words.empty()) continue;
      for (int k = 0; k < 20; ++k) {
        const auto& w = words[std::uniform_int_distribution<std::size_t>(0, words.size() - 1)(rng)];
        std::size_t tr = std::uniform_int_distribution<std::size_t>(0, ctx.traces.traces.size() - 1)(rng);
        LRChain tau(ctx.lr, ctx.traces.module, p);
        tau.add({tr, w}, q(1));
        std::vector<AlgebraElement> a;
        for (int i = 0; i <= p; ++i) {
          const auto& keys = i == 0 ? ctx.sample_keys : ctx.j_keys;
          a.push_back(AlgebraElement::basis(ctx.source, keys[std::uniform_int_distribution<std::size_t>(0, keys.size() - 1)(rng)]));
        }
        EXPECT_EQ(pair(ctx, tau, HochschildChain::tensor(a)).coefficient, oracle_pair(ctx, tr, w, a)) << name;
      }
    }
}

TEST(Pairing, OutsideTheIdealThrows) {
  // J = (x): tau on J^2 cannot see x * 1
  auto ctxs = t::admissible_contexts(2);
  auto it = std::find_if(ctxs.begin(), ctxs.end(), [](const auto& c) { return c.name.rfind("Q[x]", 0) == 0; });
  ASSERT_NE(it, ctxs.end());
  const auto& ctx = it->ctx;
  auto one = AlgebraElement::unit(ctx.source);
  LRChain low(ctx.lr, ctx.traces.module, 0);
  low.add({0, {}}, q(1));
  EXPECT_THROW(pair(ctx, low, HochschildChain::tensor({one})), OutsideIdeal);
}

TEST(Pairing, ZeroCycleGivesZero) {
  PairingContext ctx = t::graded_end_context(2);
  auto ge = ctx.target;
  auto e = AlgebraElement::basis(ge, *ge->find("E11"));
  LRChain zero(ctx.lr, ctx.traces.module, 2);
  EXPECT_TRUE(pair_classes(ctx, zero, HochschildChain::tensor({e, e, e})).value.is_zero());
}

TEST(PairingProperty, BilinearInBothArguments) {
  std::mt19937_64 rng(73);
  for (int p = 1; p <= 2; ++p)
    for (const auto& [name, ctx] : t::admissible_contexts(p))
      for (int k = 0; k < 10; ++k) {
        LRChain x = random_lr_chain(ctx.lr, ctx.traces.module, p, rng), y = random_lr_chain(ctx.lr, ctx.traces.module, p, rng);
        HochschildChain c = random_hochschild(ctx.source, p, rng, ctx.j_keys);
        HochschildChain d = random_hochschild(ctx.source, p, rng, ctx.j_keys);
        Scalar s = random_scalar(rng, Backend::Rational), u = random_scalar(rng, Backend::Rational);
        LRChain comb = s * x + u * y;
        HochschildChain hcomb = s * c + u * d;
        EXPECT_EQ(pair(ctx, comb, c).coefficient, s * pair(ctx, x, c).coefficient + u * pair(ctx, y, c).coefficient) << name;
        EXPECT_EQ(pair(ctx, x, hcomb).coefficient, s * pair(ctx, x, c).coefficient + u * pair(ctx, x, d).coefficient) << name;
      }
}

TEST(PairingProperty, PairElementsMatchesExpandedTensor) {
  std::mt19937_64 rng(79);
  PairingContext ctx = t::graded_end_context(2);
  auto ge = ctx.target;
  for (int k = 0; k < 30; ++k) {
    std::vector<AlgebraElement> a;
    for (int i = 0; i < 3; ++i) {
      int par = std::uniform_int_distribution<int>(0, 1)(rng);
      AlgebraElement x(ge);
      for (const auto& key : ge->basis())
        if (ge->parity(key) == par) x += AlgebraElement::basis(ge, key) * random_scalar(rng, Backend::Rational);
      a.push_back(x);
    }
    LRChain tau = random_lr_chain(ctx.lr, ctx.traces.module, 2, rng);
    EXPECT_EQ(pair_elements(ctx, tau, a).coefficient, pair(ctx, tau, HochschildChain::tensor(a)).coefficient);
  }
}

TEST(Lemmas, HoldExactlyInEveryAdmissibleContext) {
  for (int p = 1; p <= 3; ++p)
    for (const auto& [name, ctx] : t::admissible_contexts(p)) {
      for (const auto& c : check_admissible(ctx)) EXPECT_TRUE(c.pass) << name << " " << c.name;
      for (BVariant v : {BVariant::Full, BVariant::Normalized}) {
        LemmaSweep s = lemma_sweep(ctx, 40, 100 + p, v);
        EXPECT_TRUE(s.lemma1_exact) << name << " p=" << p;
        EXPECT_TRUE(s.lemma2_exact) << name << " p=" << p;
        EXPECT_TRUE(s.stokes_exact) << name << " p=" << p << " " << b_variant_name(v);
      }
    }
}

// The frozen signs are the only ones that work: flipping either breaks it.
TEST(Lemmas, FrozenSignsRegression) {
  EXPECT_EQ(kLemma2Sign, 1);
  EXPECT_EQ(kStokesSign, -1);
  std::mt19937_64 rng(83);
  for (int p = 1; p <= 2; ++p) {
    bool lemma2_flipped_fails = false, stokes_flipped_fails = false;
    for (const auto& [name, ctx] : t::admissible_contexts(p))
      for (int k = 0; k < 20; ++k) {
        LRChain tau = random_lr_chain(ctx.lr, ctx.traces.module, p, rng);
        HochschildChain c = random_hochschild(ctx.source, p, rng, ctx.j_keys);
        HochschildChain c1 = random_hochschild(ctx.source, p - 1, rng, ctx.j_keys);
        lemma2_flipped_fails |= !residual_lemma2(ctx, tau, c, -kLemma2Sign).is_zero();
        stokes_flipped_fails |= !residual_stokes(ctx, tau, c1, BVariant::Full, -kStokesSign).is_zero();
      }
    EXPECT_TRUE(lemma2_flipped_fails) << "p=" << p;
    EXPECT_TRUE(stokes_flipped_fails) << "p=" << p;
  }
}

TEST(Lemmas, NegativeControlBreaksLemmaOne) {
  PairingContext ctx = t::negative_control(1);
  bool admissible = true;
  for (const auto& c : check_admissible(ctx)) admissible &= c.pass;
  EXPECT_FALSE(admissible);
  LemmaSweep s = lemma_sweep(ctx, 50, 9);
  EXPECT_FALSE(s.lemma1_exact);
  EXPECT_GT(s.lemma1_max, 0.0);
}

TEST(Lemmas, UnitTensorIsKilled) {
  for (const auto& [name, ctx] : t::admissible_contexts(1)) {
    auto one = AlgebraElement::unit(ctx.source);
    std::mt19937_64 rng(5);
    LRChain tau = random_lr_chain(ctx.lr, ctx.traces.module, 1, rng);
    EXPECT_TRUE(residual_lemma1(ctx, tau, HochschildChain::tensor({one, one, one})).is_zero()) << name;
  }
}

TEST(Lemmas, CyclePairsTrivallyWithImageOfOneMinusT) {
  PairingContext ctx = t::matrix_context(1);
  LRChain tau = trace_chain(ctx, 0, {"X"}, 1);
  ASSERT_TRUE(is_lr_cycle(tau));
  std::mt19937_64 rng(89);
  for (int k = 0; k < 20; ++k) {
    HochschildChain c = random_hochschild(ctx.source, 1, rng, ctx.j_keys);
    EXPECT_TRUE(pair(ctx, tau, c - cyclic_t(c)).is_zero());
  }
}

// Both sides of the rotation identity are nonzero for a non-invariant tau.
TEST(Lemmas, RotationIdentityWithNonzeroSides) {
  auto ctxs = t::admissible_contexts(1);
  auto it = std::find_if(ctxs.begin(), ctxs.end(), [](const auto& c) { return c.name.rfind("Q[x]", 0) == 0; });
  ASSERT_NE(it, ctxs.end());
  const auto& ctx = it->ctx;
  std::mt19937_64 rng(97);
  bool nonzero_seen = false;
  for (int k = 0; k < 40; ++k) {
    LRChain tau = random_lr_chain(ctx.lr, ctx.traces.module, 1, rng);
    HochschildChain c = random_hochschild(ctx.source, 1, rng, ctx.j_keys);
    PairingValue lhs = pair(ctx, tau, c - cyclic_t(c));
    EXPECT_TRUE(residual_lemma2(ctx, tau, c).is_zero());
    nonzero_seen |= !lhs.is_zero();
  }
  EXPECT_TRUE(nonzero_seen);
}

TEST(Lemmas, StokesWithNonzeroSidesForBothVariants) {
  auto ctxs = t::admissible_contexts(2);
  auto it = std::find_if(ctxs.begin(), ctxs.end(), [](const auto& c) { return c.name == "sl2 on M2"; });
  ASSERT_NE(it, ctxs.end());
  const auto& ctx = it->ctx;
  std::mt19937_64 rng(101);
  for (BVariant v : {BVariant::Full, BVariant::Normalized}) {
    bool nonzero_seen = false;
    for (int k = 0; k < 40; ++k) {
      LRChain tau = random_lr_chain(ctx.lr, ctx.traces.module, 2, rng);
      HochschildChain c = random_hochschild(ctx.source, 1, rng, ctx.j_keys);
      nonzero_seen |= !pair(ctx, tau, connes_B(c, v)).is_zero();
      EXPECT_TRUE(residual_stokes(ctx, tau, c, v).is_zero());
    }
    EXPECT_TRUE(nonzero_seen) << b_variant_name(v);
  }
}

TEST(PairClasses, InvariantUnderRepresentativeShifts) {
  std::mt19937_64 rng(103);
  PairingContext ctx = t::graded_end_context(2);
  auto e = AlgebraElement::basis(ctx.target, *ctx.target->find("E11"));
  LRChain z = trace_chain(ctx, 0, {"d", "d"}, 2);
  HochschildChain c = HochschildChain::tensor({e, e, e});
  const PairingValue base = pair_classes(ctx, z, c).value;
  EXPECT_EQ(base.coefficient.to_string(), "-2");
  for (int k = 0; k < 10; ++k) {
    LRChain z2 = z + random_cycle_shift(ctx, rng);
    HochschildChain y = random_hochschild(ctx.source, 3, rng, ctx.sample_keys);
    HochschildChain w = random_hochschild(ctx.source, 2, rng, ctx.sample_keys);
    HochschildChain c2 = c + hoch_b(y) + (w - cyclic_t(w));
    EXPECT_EQ(pair_classes(ctx, z2, c).value.coefficient, base.coefficient);
    EXPECT_EQ(pair_classes(ctx, z, c2).value.coefficient, base.coefficient);
  }
}

TEST(PairClasses, RejectsNonCycles) {
  PairingContext ctx = t::graded_end_context(2);
  LRChain z = trace_chain(ctx, 0, {"d", "d"}, 2);
  std::mt19937_64 rng(107);
  int rejected = 0;
  for (int k = 0; k < 20; ++k) {
    HochschildChain c = random_hochschild(ctx.source, 2, rng, ctx.sample_keys);
    if (is_cyclic_cycle(c)) continue;
    EXPECT_THROW(pair_classes(ctx, z, c), PreconditionError);
    ++rejected;
  }
  EXPECT_GT(rejected, 0);
}

// tau (x) X_1 ^ ... ^ X_p is a cycle for abelian even L and invariant tau.
TEST(CycleConstructor, InvariantTraceOnAbelianAction) {
  auto m2 = matrix_algebra(2);
  auto lr = std::make_shared<SuperLieRinehart>(nullptr, std::vector<LBasisElement>{{"X", 0}, {"Y", 0}});
  lr->set_action("X", SuperDerivation::inner("ad E11", m2.element("E11")));
  lr->set_action("Y", SuperDerivation::inner("ad E22", m2.element("E22")));
  lr->validate();
  PairingContext ctx = inner_context(m2.algebra, lr, {}, 2);
  LRChain z = invariant_trace_cycle(ctx, 0, {"X", "Y"});
  EXPECT_NE(classify_chain(z), ChainClass::NotCycle);

  auto torus = quantum_torus(0.3);
  auto tlr = std::make_shared<SuperLieRinehart>(ground_field(Backend::Approx).algebra, std::vector<LBasisElement>{{"X", 0}, {"Y", 0}});
  tlr->set_action("X", torus.derivation("X"));
  tlr->set_action("Y", torus.derivation("Y"));
  std::vector<BasisKey> samples;
  for (int m = -2; m <= 2; ++m)
    for (int n = -2; n <= 2; ++n) samples.push_back({m, n});
  auto tau = make_partial_trace(torus.trace("tau"), whole_algebra(torus.algebra, 2));
  PairingContext tctx = sampled_context(torus.algebra, tlr, 2, {tau}, samples);
  EXPECT_TRUE(is_lr_cycle(invariant_trace_cycle(tctx, 0, {"X", "Y"})));
}
