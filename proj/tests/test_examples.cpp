#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "lrcyc/examples.hpp"

using namespace lrcyc;

namespace {

constexpr Backend kG = Backend::Gaussian;

Scalar g(long n) { return Scalar::from_int(n, kG); }

}  // namespace

TEST(Fredholm, ElementaryModel) {
  FredholmModel m = fredholm_diagonal("diag(1,0)", 1, {1, 0});
  FredholmResult r = fredholm_pairing(m);
  EXPECT_EQ(r.index, 1);
  // [F, e]^2 = -1 on this model and str(e [F,e] [F,e]) = -1; both orderings of
  // d ^ d contribute, so the pairing is twice that
  EXPECT_EQ(r.pairing.coefficient, g(-2));
  ASSERT_TRUE(r.ratio);
  EXPECT_EQ(*r.ratio, g(-2));
  EXPECT_TRUE(r.ker_B_verified);
}

TEST(Fredholm, RatioIsConstantAcrossModels) {
  std::optional<Scalar> c;
  std::set<long> indices;
  for (const auto& m : standard_fredholm_models()) {
    FredholmResult r = fredholm_pairing(m);
    if (r.index == 0) {
      EXPECT_TRUE(r.pairing.is_zero()) << m.name;
      continue;
    }
    indices.insert(r.index);
    ASSERT_TRUE(r.ratio);
    if (!c) c = r.ratio;
    EXPECT_EQ(*r.ratio, *c) << m.name;
  }
  EXPECT_EQ(indices, (std::set<long>{-1, 1, 2}));
  ASSERT_TRUE(c);
  EXPECT_FALSE(c->is_zero());
}

TEST(Fredholm, TrivialIdempotents) {
  for (const auto& m : standard_fredholm_models()) {
    if (m.name != "e = 0" && m.name != "e = 1") continue;
    FredholmResult r = fredholm_pairing(m);
    EXPECT_EQ(r.index, 0) << m.name;
    EXPECT_TRUE(r.pairing.is_zero()) << m.name;
    EXPECT_TRUE(r.commutator_vanishes) << m.name;
  }
}

TEST(Fredholm, InvalidModelsAreRejected) {
  FredholmModel m = fredholm_diagonal("bad", 1, {1, 0});
  m.p = 3;
  EXPECT_THROW(validate(m), PreconditionError);
  m = fredholm_diagonal("bad", 1, {1, 0});
  m.e[0][0] = g(2);
  EXPECT_THROW(validate(m), PreconditionError);
}

TEST(Fredholm, DemoReportPasses) {
  Report r = demo_fredholm(fredholm_diagonal("diag(1,0)", 1, {1, 0}));
  EXPECT_TRUE(r.all_pass());
  EXPECT_EQ(r.outputs["index"], 1);
}

// The profile identities that make e idempotent, checked pointwise.
TEST(Rieffel, ProfileIdentities) {
  for (Ramp ramp : {Ramp::Bump, Ramp::Smoothstep})
    for (double theta : {0.2, 0.3, 0.45}) {
      RieffelSpec s{theta, 0.1, ramp, 16, 0};
      for (int k = 0; k < 1000; ++k) {
        const double t = k / 1000.0;
        auto f = [&](double x) { return rieffel_f(s, x - std::floor(x)); };
        auto gg = [&](double x) { return rieffel_g(s, x - std::floor(x)); };
        EXPECT_NEAR(gg(t) * gg(t - theta), 0.0, 1e-15);
        EXPECT_NEAR(gg(t) * (f(t) + f(t - theta)), gg(t), 1e-12);
        EXPECT_NEAR(f(t) - f(t) * f(t), gg(t) * gg(t) + gg(t + theta) * gg(t + theta), 1e-12);
      }
    }
}

TEST(Rieffel, RampEndpoints) {
  for (Ramp r : {Ramp::Bump, Ramp::Smoothstep}) {
    EXPECT_EQ(ramp_value(r, 0.0, 0.1), 0.0);
    EXPECT_NEAR(ramp_value(r, 0.1, 0.1), 1.0, 1e-15);
    EXPECT_NEAR(ramp_value(r, 0.05, 0.1), 0.5, 1e-15);
  }
}

TEST(Rieffel, SpecValidation) {
  EXPECT_THROW(validate(RieffelSpec{0.3, 0.35, Ramp::Bump, 64, 0}), PreconditionError);
  EXPECT_THROW(validate(RieffelSpec{1.2, 0.1, Ramp::Bump, 64, 0}), PreconditionError);
  EXPECT_NO_THROW(validate(RieffelSpec{0.3, 0.1, Ramp::Bump, 64, 0}));
}

TEST(Torus, SmallTruncationProjection) {
  RieffelSpec s{0.3, 0.1, Ramp::Bump, 64, 0};
  auto torus = quantum_torus(s.theta);
  RieffelProjection pr = rieffel_projection(s, torus);
  EXPECT_LT(pr.idempotency_residual, 1e-3);
  EXPECT_LT(pr.adjoint_residual, 1e-12);
  EXPECT_NEAR(pr.trace, 0.3, 1e-6);
  TorusResult r = torus_pairings(torus, pr.e);
  EXPECT_EQ(std::abs(r.q_hat), 1);
  EXPECT_NEAR(r.p0.real(), r.p_hat - r.q_hat * s.theta, 1e-3);
}

TEST(Torus, TrivialProjections) {
  auto torus = quantum_torus(0.3);
  TorusResult zero = torus_pairings(torus, AlgebraElement(torus.algebra));
  EXPECT_EQ(zero.p_hat, 0);
  EXPECT_EQ(zero.q_hat, 0);
  EXPECT_EQ(std::abs(zero.p2), 0.0);
  TorusResult one = torus_pairings(torus, AlgebraElement::unit(torus.algebra));
  EXPECT_EQ(one.p_hat, 1);
  EXPECT_EQ(one.q_hat, 0);
  EXPECT_NEAR(one.p0.real(), 1.0, 1e-15);
  EXPECT_EQ(std::abs(one.p2), 0.0);
}

TEST(Circle, WindingNumbers) {
  for (long n = -3; n <= 3; ++n) {
    CircleResult r = circle_winding(n);
    EXPECT_EQ(r.winding, g(n)) << n;
    EXPECT_EQ(r.pairing.two_pi_power, n == 0 ? 0 : 1);
  }
  EXPECT_EQ(circle_winding(1).pairing.to_string(), "(i)*(2pi)");
}

TEST(Circle, Additivity) {
  const Scalar w1 = circle_winding(1).winding;
  for (long n = -5; n <= 5; ++n) EXPECT_EQ(circle_winding(n).winding, w1 * n);
}
