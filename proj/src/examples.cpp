#include "lrcyc/examples.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <omp.h>

#include "lrcyc/kernels.hpp"

namespace lrcyc {

namespace {

constexpr Backend kG = Backend::Gaussian;

using Dense = std::vector<Vector>;

Dense zeros(int n) { return Dense(n, Vector(n, Scalar::zero(kG))); }

Dense matmul(const Dense& a, const Dense& b) {
  const std::size_t n = a.size();
  Dense c(n, Vector(n, Scalar::zero(kG)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

bool same(const Dense& a, const Dense& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (!(a[i][j] == b[i][j])) return false;
  return true;
}

Dense adjoint(const Dense& a) {
  Dense t = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) t[i][j] = a[j][i].conj();
  return t;
}

Dense identity(int n) {
  Dense m = zeros(n);
  for (int i = 0; i < n; ++i) m[i][i] = Scalar::one(kG);
  return m;
}

AlgebraElement as_element(const AlgebraPtr& alg, const Dense& m) {
  const int n = static_cast<int>(m.size());
  Coeffs c;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!m[i][j].is_zero()) c.emplace(BasisKey{i * n + j, 0}, m[i][j]);
  return AlgebraElement(alg, std::move(c));
}

// Rows [r0, r1) and columns [c0, c1) of m as a sparse matrix.
SparseMatrix block(const Dense& m, int r0, int r1, int c0, int c1) {
  std::vector<SparseMatrix::Entry> entries;
  for (int i = r0; i < r1; ++i)
    for (int j = c0; j < c1; ++j)
      if (!m[i][j].is_zero()) entries.push_back({std::size_t(i - r0), std::size_t(j - c0), m[i][j]});
  return SparseMatrix::from_entries(r1 - r0, c1 - c0, kG, std::move(entries));
}

Json scalar_json(const Scalar& s) { return s.to_string(); }

}  // namespace

FredholmModel fredholm_model(std::string name, int n, std::vector<Vector> e, int p) {
  FredholmModel m;
  m.name = std::move(name);
  m.n0 = m.n1 = n;
  m.F = zeros(2 * n);
  for (int i = 0; i < n; ++i) m.F[i][n + i] = m.F[n + i][i] = Scalar::one(kG);
  m.e = std::move(e);
  m.p = p;
  return m;
}

FredholmModel fredholm_diagonal(std::string name, int n, const std::vector<int>& diag, int p) {
  if (static_cast<int>(diag.size()) != 2 * n) throw ShapeMismatch("diagonal length must be 2n");
  Dense e = zeros(2 * n);
  for (int i = 0; i < 2 * n; ++i) e[i][i] = Scalar::from_int(diag[i], kG);
  return fredholm_model(std::move(name), n, std::move(e), p);
}

std::vector<FredholmModel> standard_fredholm_models() {
  std::vector<FredholmModel> out;
  out.push_back(fredholm_diagonal("diag(1,0)", 1, {1, 0}));
  out.push_back(fredholm_diagonal("diag(0,1)", 1, {0, 1}));
  out.push_back(fredholm_diagonal("diag(1,1,0,0)", 2, {1, 1, 0, 0}));
  // Rank-one projection onto (1, i) in H0, nothing in H1.
  Dense e = zeros(4);
  const Scalar half = Scalar::from_ratio(1, 2, kG);
  const Scalar i_half = Scalar::imaginary_unit(kG) * half;
  e[0][0] = half;
  e[0][1] = -i_half;
  e[1][0] = i_half;
  e[1][1] = half;
  out.push_back(fredholm_model("line (1,i) in H0", 2, e));
  out.push_back(fredholm_diagonal("e = 0", 1, {0, 0}));
  out.push_back(fredholm_diagonal("e = 1", 1, {1, 1}));
  return out;
}

void validate(const FredholmModel& m) {
  const int n = m.n0 + m.n1;
  if (m.n0 < 1 || m.n1 < 1) throw PreconditionError("graded dimensions must be positive");
  if (m.p < 2 || m.p % 2) throw PreconditionError("the Fredholm pairing needs an even degree p >= 2");
  auto square = [n](const Dense& a) {
    if (static_cast<int>(a.size()) != n) return false;
    for (const auto& r : a)
      if (static_cast<int>(r.size()) != n) return false;
    return true;
  };
  if (!square(m.F) || !square(m.e)) throw ShapeMismatch("F and e must be (n0+n1) square matrices");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const bool odd = (i < m.n0) != (j < m.n0);
      if (!odd && !m.F[i][j].is_zero()) throw PreconditionError("F is not odd");
      if (odd && !m.e[i][j].is_zero()) throw PreconditionError("e is not even");
    }
  if (!same(matmul(m.F, m.F), identity(n))) throw PreconditionError("F^2 != 1");
  if (!same(adjoint(m.F), m.F)) throw PreconditionError("F is not self-adjoint");
  if (!same(matmul(m.e, m.e), m.e)) throw PreconditionError("e^2 != e");
  if (!same(adjoint(m.e), m.e)) throw PreconditionError("e is not self-adjoint");
}

FredholmResult fredholm_pairing(const FredholmModel& m) {
  validate(m);
  StandardAlgebra ge = graded_endomorphisms(m.n0, m.n1, kG);
  const AlgebraPtr& alg = ge.algebra;
  const AlgebraElement F = as_element(alg, m.F);
  const AlgebraElement e = as_element(alg, m.e);

  auto lr = std::make_shared<SuperLieRinehart>(ground_field(kG).algebra, std::vector<LBasisElement>{{"d", 1}});
  lr->set_action("d", SuperDerivation::inner("d", F));
  lr->validate();
  PairingContext ctx = inner_context(alg, lr, {}, m.p);
  ctx = with_functionals(ctx, {make_partial_trace(ge.trace("str"), ctx.jp)});

  const LRChain cycle = trace_chain(ctx, 0, std::vector<std::string>(m.p, "d"), m.p);
  const HochschildChain ep = HochschildChain::tensor(std::vector<AlgebraElement>(m.p + 1, e));

  FredholmResult r;
  ClassPairing cp = pair_classes(ctx, cycle, ep);
  r.pairing = cp.value;
  r.ker_B_verified = cp.ker_B_verified;
  r.commutator_vanishes = super_commutator(F, e).is_zero();

  const int n0 = m.n0;
  const int n = m.n0 + m.n1;
  // e11 F e00 restricted to e00 H0 -> e11 H1. Its range is that of the full
  // product block, and in finite dimensions index = dim e00H0 - dim e11H1.
  Dense efe = matmul(matmul(m.e, m.F), m.e);
  const long rank_t = static_cast<long>(rank(block(efe, n0, n, 0, n0)));
  const long dom = static_cast<long>(rank(block(m.e, 0, n0, 0, n0)));
  const long cod = static_cast<long>(rank(block(m.e, n0, n, n0, n)));
  r.index = (dom - rank_t) - (cod - rank_t);
  if (r.index != 0) r.ratio = r.pairing.coefficient / Scalar::from_int(r.index, kG);
  return r;
}

Report demo_fredholm(const FredholmModel& m) {
  Stopwatch sw;
  Report rep;
  rep.command = "demo fredholm";
  rep.inputs["model"] = m.name;
  rep.inputs["n0"] = m.n0;
  rep.inputs["n1"] = m.n1;
  rep.inputs["p"] = m.p;
  FredholmResult r = fredholm_pairing(m);
  rep.outputs["pairing"] = r.pairing.to_string();
  rep.outputs["index"] = r.index;
  rep.outputs["ratio"] = r.ratio ? Json(r.ratio->to_string()) : Json(nullptr);
  rep.outputs["ker_B_verified"] = r.ker_B_verified;
  rep.outputs["commutator_vanishes"] = r.commutator_vanishes;
  rep.check_exact("pairing_zero_when_commutator_zero", !r.commutator_vanishes || r.pairing.is_zero());
  rep.check_exact("pairing_zero_iff_index_zero", (r.index == 0) == r.pairing.is_zero());
  rep.elapsed_ms = sw.elapsed_ms();
  return rep;
}

const char* ramp_name(Ramp r) { return r == Ramp::Bump ? "bump" : "smoothstep"; }

Ramp parse_ramp(std::string_view s) {
  if (s == "bump") return Ramp::Bump;
  if (s == "smoothstep") return Ramp::Smoothstep;
  throw UsageError("unknown ramp '" + std::string(s) + "' (expected bump or smoothstep)");
}

void validate(const RieffelSpec& s) {
  if (!(s.theta > 0.0 && s.theta < 1.0)) throw PreconditionError("theta must lie in (0, 1)");
  if (!(s.delta > 0.0 && s.delta < std::min(s.theta, 1.0 - s.theta)))
    throw PreconditionError("delta must satisfy 0 < delta < min(theta, 1 - theta)");
  if (s.truncation < 1) throw PreconditionError("truncation order must be positive");
  if (s.points() < 2 * s.truncation + 1) throw PreconditionError("too few quadrature points for the truncation");
}

double ramp_value(Ramp r, double x, double delta) {
  const double u = std::clamp(x / delta, 0.0, 1.0);
  if (r == Ramp::Smoothstep) return u * u * (3.0 - 2.0 * u);
  auto sigma = [](double v) { return v > 0.0 ? std::exp(-1.0 / v) : 0.0; };
  const double a = sigma(u);
  const double b = sigma(1.0 - u);
  return a / (a + b);
}

double rieffel_f(const RieffelSpec& s, double t) {
  t -= std::floor(t);
  if (t < s.delta) return ramp_value(s.ramp, t, s.delta);
  if (t < s.theta) return 1.0;
  if (t < s.theta + s.delta) return 1.0 - ramp_value(s.ramp, t - s.theta, s.delta);
  return 0.0;
}

double rieffel_g(const RieffelSpec& s, double t) {
  t -= std::floor(t);
  if (t < s.theta || t >= s.theta + s.delta) return 0.0;
  const double f = rieffel_f(s, t);
  return std::sqrt(std::max(f * (1.0 - f), 0.0));
}

AlgebraElement torus_adjoint(const AlgebraElement& a) {
  const auto* torus = dynamic_cast<const QuantumTorus*>(&a.algebra());
  if (!torus) throw PreconditionError("torus_adjoint needs a quantum torus element");
  // (U^m V^n)^* = V^{-n} U^{-m} = lambda^{-nm} U^{-m} V^{-n}
  Coeffs out;
  for (const auto& [k, c] : a.coeffs())
    accumulate(out, BasisKey{-k.a, -k.b}, c.conj() * Scalar(torus->phase(-static_cast<long>(k.a) * k.b)));
  return AlgebraElement(a.algebra_ptr(), std::move(out));
}

RieffelProjection rieffel_projection(const RieffelSpec& s, const StandardAlgebra& torus) {
  validate(s);
  const auto* qt = dynamic_cast<const QuantumTorus*>(torus.algebra.get());
  if (!qt || qt->theta() != s.theta) throw PreconditionError("rieffel_projection needs the quantum torus of the same theta");
  const int N = s.truncation;
  const int M = s.points();
  std::vector<double> fv(M), gv(M);
  for (int j = 0; j < M; ++j) {
    const double t = static_cast<double>(j) / M;
    fv[j] = rieffel_f(s, t);
    gv[j] = rieffel_g(s, t);
  }
  // Trapezoid rule on the periodic grid: hat h_k = (1/M) sum_j h(t_j) e^{-2 pi i k t_j}.
  std::vector<std::complex<double>> fh(2 * N + 1), gh(2 * N + 1);
#pragma omp parallel for schedule(static)
  for (int idx = 0; idx < 2 * N + 1; ++idx) {
    const int k = idx - N;
    std::complex<double> sf = 0.0, sg = 0.0;
    for (int j = 0; j < M; ++j) {
      const double ang = -2.0 * std::numbers::pi * static_cast<double>(k) * j / M;
      const std::complex<double> w(std::cos(ang), std::sin(ang));
      sf += fv[j] * w;
      sg += gv[j] * w;
    }
    fh[idx] = sf / static_cast<double>(M);
    gh[idx] = sg / static_cast<double>(M);
  }

  const AlgebraPtr& alg = torus.algebra;
  Coeffs f_of_u, g_of_u;
  for (int idx = 0; idx < 2 * N + 1; ++idx) {
    accumulate(f_of_u, BasisKey{idx - N, 0}, Scalar(fh[idx]));
    accumulate(g_of_u, BasisKey{idx - N, 0}, Scalar(gh[idx]));
  }
  const AlgebraElement g(alg, g_of_u);
  const AlgebraElement V = AlgebraElement::basis(alg, {0, 1});
  const AlgebraElement Vinv = AlgebraElement::basis(alg, {0, -1});
  AlgebraElement e = mul(g, V) + AlgebraElement(alg, f_of_u) + mul(Vinv, g);

  RieffelProjection out{e, 0.0, 0.0, 0.0};
  out.idempotency_residual = (mul(e, e) - e).max_magnitude();
  out.adjoint_residual = (torus_adjoint(e) - e).max_magnitude();
  auto it = e.coeffs().find(BasisKey{0, 0});
  out.trace = it == e.coeffs().end() ? 0.0 : it->second.to_complex().real();
  return out;
}

TorusResult torus_pairings(const StandardAlgebra& torus, const AlgebraElement& e) {
  const AlgebraPtr& alg = torus.algebra;
  auto lr = std::make_shared<SuperLieRinehart>(ground_field(Backend::Approx).algebra,
                                               std::vector<LBasisElement>{{"X", 0}, {"Y", 0}});
  lr->set_action("X", torus.derivation("X"));
  lr->set_action("Y", torus.derivation("Y"));
  // Support of e and a margin around it for the sampled module structure.
  std::vector<BasisKey> samples;
  for (int m = -2; m <= 2; ++m)
    for (int n = -2; n <= 2; ++n) samples.push_back({m, n});
  lr->validate();

  TorusResult r;
  for (int p : {0, 2}) {
    const IdealPtr jp = whole_algebra(alg, std::max(p, 1));
    PairingContext ctx = sampled_context(alg, lr, p, {make_partial_trace(torus.trace("tau"), jp)}, samples);
    if (p == 0) {
      r.p0 = pair_elements(ctx, trace_chain(ctx, 0, {}, 0), {e}).numeric();
    } else {
      const LRChain cycle = invariant_trace_cycle(ctx, 0, {"X", "Y"});
      r.p2 = pair_elements(ctx, cycle, {e, e, e}).numeric();
    }
  }
  r.chern = r.p2 / std::complex<double>(0.0, 2.0 * std::numbers::pi);
  r.q_hat = std::lround(kTorusOrientation * r.chern.real());
  r.p_hat = std::lround(r.p0.real() + static_cast<double>(r.q_hat) * dynamic_cast<const QuantumTorus&>(*alg).theta());
  return r;
}

Report demo_nctorus(const RieffelSpec& s) {
  Stopwatch sw;
  Report rep;
  rep.command = "demo nctorus";
  rep.inputs["theta"] = s.theta;
  rep.inputs["delta"] = s.delta;
  rep.inputs["ramp"] = ramp_name(s.ramp);
  rep.inputs["truncation"] = s.truncation;
  rep.inputs["quadrature_points"] = s.points();
  StandardAlgebra torus = quantum_torus(s.theta);
  RieffelProjection proj = rieffel_projection(s, torus);
  TorusResult r = torus_pairings(torus, proj.e);

  auto cx = [](std::complex<double> z) { return Json::array({z.real(), z.imag()}); };
  rep.outputs["trace"] = proj.trace;
  rep.outputs["P0"] = cx(r.p0);
  rep.outputs["P2"] = cx(r.p2);
  rep.outputs["chern"] = cx(r.chern);
  rep.outputs["p_hat"] = r.p_hat;
  rep.outputs["q_hat"] = r.q_hat;
  rep.outputs["support_size"] = proj.e.coeffs().size();

  rep.check("idempotency", proj.idempotency_residual, 1e-6);
  rep.check("self_adjoint", proj.adjoint_residual, 1e-12);
  rep.check("trace_equals_theta", std::abs(proj.trace - s.theta), 1e-6);
  const double nearest = std::round(r.chern.real());
  rep.check("chern_integral", std::abs(r.chern - std::complex<double>(nearest, 0.0)), 1e-4);
  rep.check_exact("chern_nonzero", nearest != 0.0);
  rep.check("joint_consistency",
            std::abs(r.p0 - std::complex<double>(static_cast<double>(r.p_hat) -
                                                     static_cast<double>(r.q_hat) * s.theta,
                                                 0.0)),
            1e-4);
  rep.elapsed_ms = sw.elapsed_ms();
  return rep;
}

CircleResult circle_winding(long n) {
  StandardAlgebra circle = circle_laurent();
  const AlgebraPtr& alg = circle.algebra;
  auto lr = std::make_shared<SuperLieRinehart>(ground_field(kG).algebra, std::vector<LBasisElement>{{"X", 0}});
  lr->set_action("X", circle.derivation("X"));
  std::vector<BasisKey> samples;
  for (int k = -4; k <= 4; ++k) samples.push_back({k, 0});
  lr->validate();
  PairingContext ctx = sampled_context(alg, lr, 1, {make_partial_trace(circle.trace("tau"), whole_algebra(alg, 1))},
                                       samples);
  const LRChain cycle = invariant_trace_cycle(ctx, 0, {"X"});
  const auto k = static_cast<std::int32_t>(n);
  const HochschildChain c = HochschildChain::basis(alg, {BasisKey{-k, 0}, BasisKey{k, 0}});
  CircleResult r;
  r.pairing = pair(ctx, cycle, c);
  r.winding = r.pairing.coefficient / (Scalar::imaginary_unit(kG) * Scalar::from_int(kCircleScale, kG));
  return r;
}

Report demo_circle(long n) {
  Stopwatch sw;
  Report rep;
  rep.command = "demo circle";
  rep.inputs["n"] = n;
  CircleResult r = circle_winding(n);
  rep.outputs["pairing"] = r.pairing.to_string();
  rep.outputs["winding"] = scalar_json(r.winding);
  rep.check_exact("winding_equals_n", r.winding == Scalar::from_int(n, kG));
  rep.check_exact("two_pi_power", n == 0 ? r.pairing.two_pi_power == 0 : r.pairing.two_pi_power == 1);
  rep.elapsed_ms = sw.elapsed_ms();
  return rep;
}

LRChain invariant_trace_cycle(const PairingContext& ctx, std::size_t trace_index,
                              const std::vector<std::string>& word) {
  LRChain c = trace_chain(ctx, trace_index, word, static_cast<int>(word.size()));
  if (!is_lr_cycle(c)) throw PreconditionError("trace (x) wedge is not a cycle; is tau invariant and L abelian?");
  return c;
}

}  // namespace lrcyc
