#include "lrcyc/pairing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "lrcyc/kernels.hpp"
#include "lrcyc/random.hpp"

namespace lrcyc {

std::complex<double> PairingValue::numeric() const {
  return coefficient.to_complex() * std::pow(2.0 * std::numbers::pi, two_pi_power);
}

std::string PairingValue::to_string() const {
  if (two_pi_power == 0) return coefficient.to_string();
  std::ostringstream os;
  os << "(" << coefficient.to_string() << ")*(2pi)";
  if (two_pi_power != 1) os << "^" << two_pi_power;
  return os.str();
}

namespace {

int permutation_sign(const std::vector<int>& perm) {
  int inversions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inversions;
  return inversions % 2 ? -1 : 1;
}

// Koszul sign of  X_1..X_p a_0..a_p  ->  a_0 X_s(1) a_1 ... X_s(p) a_p.
// perm[i] is the index of the X placed in slot i + 1.
int koszul_sign(const std::vector<int>& x_par, const std::vector<int>& perm, const std::vector<int>& a_par) {
  const int p = static_cast<int>(x_par.size());
  struct Sym {
    int src;
    int dst;
    int par;
  };
  std::vector<Sym> syms;
  for (int slot = 0; slot < p; ++slot) syms.push_back({perm[slot], 2 * slot + 1, x_par[perm[slot]]});
  for (int i = 0; i <= p; ++i) syms.push_back({p + i, 2 * i, a_par[i]});
  int odd_swaps = 0;
  for (const auto& u : syms)
    for (const auto& v : syms)
      if (u.src < v.src && u.dst > v.dst && u.par && v.par) ++odd_swaps;
  return odd_swaps % 2 ? -1 : 1;
}

void require_backend(const PairingContext& ctx, Backend b) {
  if (ctx.target->backend() != b || ctx.source->backend() != b)
    throw BackendMismatch("pairing arguments and algebras use different backends");
}

void fill_j_keys(PairingContext& ctx) {
  ctx.j_keys.clear();
  for (const auto& k : ctx.sample_keys)
    if (ctx.j->contains(ctx.phi(k))) ctx.j_keys.push_back(k);
}

std::pair<IdealPtr, IdealPtr> ideals(const AlgebraPtr& b_alg, const std::vector<AlgebraElement>& gens, int p) {
  if (gens.empty()) return {whole_algebra(b_alg, 1), whole_algebra(b_alg, std::max(p, 1))};
  return {ideal_power_basis(b_alg, gens, 1), ideal_power_basis(b_alg, gens, std::max(p, 1))};
}

}  // namespace

PairingContext inner_context(const AlgebraPtr& b_alg, const LRPtr& lr,
                             const std::vector<AlgebraElement>& j_generators, int p) {
  PairingContext ctx;
  ctx.source = ctx.target = b_alg;
  ctx.phi = [b = b_alg->backend()](const BasisKey& k) { return Coeffs{{k, Scalar::one(b)}}; };
  std::tie(ctx.j, ctx.jp) = ideals(b_alg, j_generators, p);
  ctx.lr = lr;
  ctx.p = p;
  ctx.traces = trace_module(b_alg, ctx.jp, *lr);
  ctx.sample_keys = b_alg->basis();
  fill_j_keys(ctx);
  return ctx;
}

PairingContext mapped_context(const AlgebraPtr& a_alg, const AlgebraPtr& b_alg, std::map<BasisKey, Coeffs> phi,
                              const LRPtr& lr, const std::vector<AlgebraElement>& j_generators, int p) {
  if (a_alg->backend() != b_alg->backend()) throw BackendMismatch("A and B use different backends");
  for (const auto& [k, img] : phi) {
    if (!a_alg->contains(k)) throw PreconditionError("phi defined on a key outside A");
    for (const auto& [kb, s] : img) {
      if (!b_alg->contains(kb)) throw PreconditionError("phi takes values outside B");
      if (b_alg->parity(kb) != a_alg->parity(k)) throw PreconditionError("phi does not preserve parity");
    }
  }
  PairingContext ctx;
  ctx.source = a_alg;
  ctx.target = b_alg;
  auto table = std::make_shared<const std::map<BasisKey, Coeffs>>(std::move(phi));
  ctx.phi = [table](const BasisKey& k) {
    auto it = table->find(k);
    return it == table->end() ? Coeffs{} : it->second;
  };
  std::tie(ctx.j, ctx.jp) = ideals(b_alg, j_generators, p);
  ctx.lr = lr;
  ctx.p = p;
  ctx.traces = trace_module(b_alg, ctx.jp, *lr);
  ctx.sample_keys = a_alg->basis();
  fill_j_keys(ctx);
  return ctx;
}

PairingContext sampled_context(const AlgebraPtr& b_alg, const LRPtr& lr, int p,
                               const std::vector<PartialTrace>& traces, const std::vector<BasisKey>& samples) {
  PairingContext ctx;
  ctx.source = ctx.target = b_alg;
  ctx.phi = [b = b_alg->backend()](const BasisKey& k) { return Coeffs{{k, Scalar::one(b)}}; };
  ctx.j = whole_algebra(b_alg, 1);
  ctx.jp = traces.empty() ? whole_algebra(b_alg, std::max(p, 1)) : traces.front().domain_ptr();
  ctx.lr = lr;
  ctx.p = p;
  ctx.traces = trace_module_sampled(traces, *lr, samples);
  ctx.sample_keys = samples;
  ctx.j_keys = samples;
  return ctx;
}

PairingContext with_functionals(PairingContext ctx, const std::vector<PartialTrace>& functionals) {
  ctx.traces = functional_module(functionals, *ctx.lr);
  return ctx;
}

std::vector<AdmissibilityCheck> check_admissible(const PairingContext& ctx) {
  std::vector<AdmissibilityCheck> out;
  const bool exact = ctx.target->backend() != Backend::Approx;
  const double tol = exact ? 0.0 : 1e-9;
  auto add = [&](std::string name, double r) { out.push_back({std::move(name), r, r <= tol}); };
  const Scalar one = Scalar::one(ctx.target->backend());
  const auto& keys = ctx.sample_keys;

  double mult = 0.0;
  for (const auto& x : keys)
    for (const auto& y : keys) {
      Coeffs lhs;
      for (const auto& [k, s] : ctx.source->multiply_basis(x, y)) accumulate(lhs, ctx.phi(k), s);
      accumulate(lhs, ctx.target->multiply(ctx.phi(x), ctx.phi(y)), -one);
      for (const auto& e : lhs) mult = std::max(mult, e.second.magnitude());
    }
  add("phi_multiplicative", mult);

  Coeffs u;
  for (const auto& [k, s] : ctx.source->unit()) accumulate(u, ctx.phi(k), s);
  accumulate(u, ctx.target->unit(), -one);
  double unital = 0.0;
  for (const auto& e : u) unital = std::max(unital, e.second.magnitude());
  add("phi_unital", unital);

  double outside = 0.0;
  for (int i = 0; i < static_cast<int>(ctx.lr->size()); ++i) {
    const SuperDerivation* d = ctx.lr->action(i);
    if (!d) continue;
    for (const auto& a : keys)
      if (!ctx.j->contains(d->apply(ctx.phi(a)))) outside += 1.0;
  }
  add("action_into_J", outside);

  double comm = 0.0;
  for (const auto& t : ctx.traces.traces) {
    if (t.domain().is_finite())
      comm = std::max(comm, supercommutator_residual(t));
    else
      comm = std::max(comm, supercommutator_residual(t, keys, keys));
  }
  add("traces_vanish_on_supercommutators", comm);

  double hom = 0.0;
  try {
    hom = ctx.lr->action_residual(ctx.target->is_finite() ? std::vector<BasisKey>{} : keys);
  } catch (const ComputationError&) {
    hom = 1.0;
  }
  add("action_is_lie_homomorphism", hom);
  add("module_compatibility", ctx.traces.module->compatibility_residual(*ctx.lr));
  return out;
}

namespace {

struct WordData {
  std::vector<const SuperDerivation*> ders;
  std::vector<int> x_par;
  int tag = 0;
};

// nullopt when some letter has no action on B.
std::optional<WordData> word_data(const SuperLieRinehart& lr, const std::vector<int>& word) {
  WordData w;
  for (int l : word) {
    const SuperDerivation* d = lr.action(l);
    if (!d) return std::nullopt;
    w.ders.push_back(d);
    w.x_par.push_back(lr.parity(l));
    w.tag += d->two_pi_power();
  }
  return w;
}

// Adds factor * sum_sigma sign * phi(a_0) X_s1(phi(a_1)) ... X_sp(phi(a_p)) to `total`.
void accumulate_products(const SuperAlgebra& B, const WordData& wd, const std::vector<Coeffs>& images,
                         const std::vector<int>& a_par, const Scalar& factor, Coeffs& total) {
  const int p = static_cast<int>(wd.ders.size());
  if (images[0].empty()) return;
  // X_l(phi(a_i)) for every letter l and slot i >= 1, computed once.
  std::vector<std::vector<Coeffs>> derived(p, std::vector<Coeffs>(p + 1));
  for (int l = 0; l < p; ++l)
    for (int i = 1; i <= p; ++i) derived[l][i] = wd.ders[l]->apply(images[i]);
  std::vector<int> perm(p);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    Coeffs prod = images[0];
    for (int slot = 0; slot < p && !prod.empty(); ++slot) {
      const Coeffs& f = derived[perm[slot]][slot + 1];
      prod = f.empty() ? Coeffs{} : B.multiply(prod, f);
    }
    if (prod.empty()) continue;
    const int sign = permutation_sign(perm) * koszul_sign(wd.x_par, perm, a_par);
    accumulate(total, prod, sign < 0 ? -factor : factor);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

void check_pair_args(const PairingContext& ctx, const LRChain& tau_chain) {
  if (tau_chain.module_ptr() != ctx.traces.module) throw PreconditionError("LR chain is not over the context's trace module");
  require_backend(ctx, tau_chain.module().backend());
}

PairingValue evaluate_totals(const PairingContext& ctx, const std::vector<Coeffs>& totals, std::optional<int> tag) {
  Scalar value = Scalar::zero(ctx.target->backend());
  for (std::size_t k = 0; k < totals.size(); ++k)
    if (!totals[k].empty()) value += ctx.traces.traces[k].evaluate(totals[k]);
  return PairingValue{value, value.is_zero() ? 0 : tag.value_or(0)};
}

void merge_tag(std::optional<int>& tag, int word_tag) {
  if (tag && *tag != word_tag) throw PreconditionError("action derivations carry inconsistent 2 pi factors");
  tag = word_tag;
}

}  // namespace

PairingValue pair(const PairingContext& ctx, const LRChain& tau_chain, const HochschildChain& hoch) {
  const int p = tau_chain.degree();
  if (hoch.degree() != p) throw ShapeMismatch("LR degree and Hochschild degree differ");
  if (&hoch.algebra() != ctx.source.get()) throw PreconditionError("Hochschild chain is not over the source algebra");
  check_pair_args(ctx, tau_chain);
  const SuperAlgebra& A = *ctx.source;

  std::vector<Coeffs> totals(ctx.traces.traces.size());
  std::optional<int> tag;
  for (const auto& [key, v] : tau_chain.terms()) {
    auto wd = word_data(*ctx.lr, key.second);
    if (!wd) continue;
    merge_tag(tag, wd->tag);
    for (const auto& [t, w] : hoch.terms()) {
      std::vector<int> a_par;
      std::vector<Coeffs> images;
      for (const auto& a : t) {
        a_par.push_back(A.parity(a));
        images.push_back(ctx.phi(a));
      }
      accumulate_products(*ctx.target, *wd, images, a_par, v * w, totals[key.first]);
    }
  }
  return evaluate_totals(ctx, totals, tag);
}

PairingValue pair_elements(const PairingContext& ctx, const LRChain& tau_chain,
                           const std::vector<AlgebraElement>& factors) {
  const int p = tau_chain.degree();
  if (static_cast<int>(factors.size()) != p + 1) throw ShapeMismatch("pair_elements needs p + 1 factors");
  check_pair_args(ctx, tau_chain);
  std::vector<int> a_par;
  std::vector<Coeffs> images;
  for (const auto& a : factors) {
    if (a.algebra_ptr() != ctx.source) throw PreconditionError("factor is not in the source algebra");
    auto par = a.parity();
    if (!par) throw PreconditionError("pair_elements needs homogeneous factors");
    a_par.push_back(*par);
    Coeffs img;
    for (const auto& [k, s] : a.coeffs()) accumulate(img, ctx.phi(k), s);
    images.push_back(std::move(img));
  }
  std::vector<Coeffs> totals(ctx.traces.traces.size());
  std::optional<int> tag;
  for (const auto& [key, v] : tau_chain.terms()) {
    auto wd = word_data(*ctx.lr, key.second);
    if (!wd) continue;
    merge_tag(tag, wd->tag);
    accumulate_products(*ctx.target, *wd, images, a_par, v, totals[key.first]);
  }
  return evaluate_totals(ctx, totals, tag);
}

namespace {

PairingValue difference(const PairingValue& a, const PairingValue& b, const Scalar& factor) {
  Scalar fb = b.coefficient * factor;
  if (a.is_zero()) return PairingValue{-fb, b.two_pi_power};
  if (fb.is_zero()) return a;
  if (a.two_pi_power != b.two_pi_power) {
    // Mixed symbolic powers: fall back to a numeric comparison.
    std::complex<double> d = a.numeric() - b.numeric() * factor.to_complex();
    return PairingValue{Scalar(d), 0};
  }
  return PairingValue{a.coefficient - fb, a.two_pi_power};
}

}  // namespace

PairingValue residual_lemma1(const PairingContext& ctx, const LRChain& tau_chain, const HochschildChain& c) {
  if (c.degree() != tau_chain.degree() + 1) throw ShapeMismatch("Lemma 1 needs c of degree p + 1");
  return pair(ctx, tau_chain, hoch_b(c));
}

PairingValue residual_lemma2(const PairingContext& ctx, const LRChain& tau_chain, const HochschildChain& c,
                             int sign) {
  if (c.degree() != tau_chain.degree() || c.degree() < 1) throw ShapeMismatch("Lemma 2 needs c of degree p >= 1");
  PairingValue lhs = pair(ctx, tau_chain, c - cyclic_t(c));
  PairingValue rhs = pair(ctx, lr_boundary(tau_chain), rotate_and_multiply(c));
  return difference(lhs, rhs, Scalar::from_int(sign, ctx.target->backend()));
}

PairingValue residual_stokes(const PairingContext& ctx, const LRChain& tau_chain, const HochschildChain& c,
                             BVariant variant, int sign) {
  const int p = tau_chain.degree();
  if (p < 1 || c.degree() != p - 1) throw ShapeMismatch("the Stokes identity needs c of degree p - 1");
  PairingValue lhs = pair(ctx, tau_chain, connes_B(c, variant));
  PairingValue rhs = pair(ctx, lr_boundary(tau_chain), c);
  return difference(lhs, rhs, Scalar::from_int(static_cast<long>(sign) * p, ctx.target->backend()));
}

ClassPairing pair_classes(const PairingContext& ctx, const LRChain& lr_cycle, const HochschildChain& hc_rep) {
  if (!is_lr_cycle(lr_cycle)) throw PreconditionError("pair_classes: the LR chain is not a cycle");
  if (!is_cyclic_cycle(hc_rep)) throw PreconditionError("pair_classes: the Hochschild chain is not a cyclic cycle");
  ClassPairing out;
  if (auto killed = B_kills_class(hc_rep)) {
    if (!*killed) throw PreconditionError("pair_classes: B does not kill the class of the Hochschild chain");
    out.ker_B_verified = true;
  }
  out.value = pair(ctx, lr_cycle, hc_rep);
  return out;
}

LRChain trace_chain(const PairingContext& ctx, std::size_t trace_index, const std::vector<std::string>& word,
                    int degree) {
  if (static_cast<int>(word.size()) != degree) throw ShapeMismatch("word length differs from degree");
  LRChain out(ctx.lr, ctx.traces.module, degree);
  std::vector<int> idx;
  for (const auto& id : word) idx.push_back(ctx.lr->index_of(id));
  out.add_word(trace_index, idx, Scalar::one(ctx.traces.module->backend()));
  return out;
}

LemmaSweep lemma_sweep(const PairingContext& ctx, std::size_t samples, std::uint64_t seed, BVariant variant,
                       bool parallel) {
  const int p = ctx.p;
  auto fn = [&](std::size_t i) {
    auto rng = sample_rng(seed, i);
    std::vector<double> r(6, 0.0);
    auto record = [&](std::size_t slot, const PairingValue& v) {
      r[slot] = v.coefficient.magnitude();
      r[slot + 3] = v.is_zero() ? 0.0 : 1.0;
    };
    LRChain tau = random_lr_chain(ctx.lr, ctx.traces.module, p, rng);
    record(0, residual_lemma1(ctx, tau, random_hochschild(ctx.source, p + 1, rng, ctx.sample_keys)));
    if (p >= 1 && !ctx.j_keys.empty()) {
      record(1, residual_lemma2(ctx, tau, random_hochschild(ctx.source, p, rng, ctx.j_keys)));
      record(2, residual_stokes(ctx, tau, random_hochschild(ctx.source, p - 1, rng, ctx.j_keys), variant));
    }
    return r;
  };
  auto m = parallel ? kernels::max_over_samples_parallel(samples, 6, fn)
                    : kernels::max_over_samples_serial(samples, 6, fn);
  LemmaSweep out;
  out.samples = samples;
  out.seed = seed;
  out.variant = variant;
  out.lemma1_max = m[0];
  out.lemma2_max = m[1];
  out.stokes_max = m[2];
  out.lemma1_exact = m[3] == 0.0;
  out.lemma2_exact = m[4] == 0.0;
  out.stokes_exact = m[5] == 0.0;
  return out;
}

}  // namespace lrcyc
