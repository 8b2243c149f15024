#include "contexts.hpp"

namespace lrcyc::testing {

namespace {

constexpr Backend kQ = Backend::Rational;

Scalar q(long n) { return Scalar::from_int(n, kQ); }

std::shared_ptr<SuperLieRinehart> acting_on(std::vector<LBasisElement> basis) {
  return std::make_shared<SuperLieRinehart>(nullptr, std::move(basis));
}

}  // namespace

std::vector<NamedAlgebra> exact_algebras() {
  return {{"Q", ground_field()},
          {"Q[x]/x^3", truncated_polynomial(3)},
          {"M2(Q)", matrix_algebra(2)},
          {"End(Q^{1|1})", graded_endomorphisms(1, 1)}};
}

LRPtr abelian2() { return lie_algebra({{"X", 0}, {"Y", 0}}, {}); }

LRPtr sl2() {
  return lie_algebra({{"e", 0}, {"f", 0}, {"h", 0}},
                     {{"e", "f", {{"h", 1}}}, {"h", "e", {{"e", 2}}}, {"h", "f", {{"f", -2}}}});
}

LRPtr odd_generator() { return lie_algebra({{"d", 1}}, {}); }

LRPtr anchored_pair() {
  auto tp = truncated_polynomial(3);
  auto lr = std::make_shared<SuperLieRinehart>(tp.algebra, std::vector<LBasisElement>{{"X", 0}, {"Y", 0}});
  lr->set_bracket("X", "Y", {{"Y", Coeffs{{BasisKey{0, 0}, q(1)}}}});
  lr->set_anchor("X", tp.derivation("x d/dx"));
  lr->set_anchor("Y", tp.derivation("x^2 d/dx"));
  lr->validate();
  return lr;
}

ModulePtr base_ring_module(const LRPtr& anchored) {
  const SuperAlgebra& r = anchored->base();
  auto m = std::make_shared<RightModule>(std::vector<std::string>{"1", "x", "x^2"}, std::vector<int>{0, 0, 0}, kQ);
  for (int l = 0; l < static_cast<int>(anchored->size()); ++l) {
    const SuperDerivation* d = anchored->anchor(l);
    std::vector<SparseMatrix::Entry> entries;
    for (const auto& k : r.basis())
      for (const auto& [to, c] : d->on_basis(k))
        entries.push_back({r.index_of(to), r.index_of(k), -c});
    m->set_action(l, SparseMatrix::from_entries(3, 3, kQ, std::move(entries)));
  }
  for (const auto& s : r.basis()) {
    std::vector<SparseMatrix::Entry> entries;
    for (const auto& k : r.basis())
      for (const auto& [to, c] : r.multiply_basis(k, s)) entries.push_back({r.index_of(to), r.index_of(k), c});
    m->set_r_action(s, SparseMatrix::from_entries(3, 3, kQ, std::move(entries)));
  }
  return m;
}

namespace {

ModulePtr sl2_adjoint(const LRPtr& g) {
  // m.X = [m, X]
  const int n = static_cast<int>(g->size());
  auto m = std::make_shared<RightModule>(std::vector<std::string>{"e", "f", "h"}, std::vector<int>{0, 0, 0}, kQ);
  for (int x = 0; x < n; ++x) {
    std::vector<SparseMatrix::Entry> entries;
    for (int k = 0; k < n; ++k)
      for (const auto& [l, c] : g->bracket(k, x)) entries.push_back({static_cast<std::size_t>(l), static_cast<std::size_t>(k), c.at(BasisKey{0, 0})});
    m->set_action(x, SparseMatrix::from_entries(n, n, kQ, std::move(entries)));
  }
  return m;
}

}  // namespace

std::vector<NamedLR> boundary_families() {
  std::vector<NamedLR> out;
  for (auto [name, lr] : std::vector<std::pair<std::string, LRPtr>>{
           {"abelian Q^2", abelian2()}, {"sl2", sl2()}, {"odd generator", odd_generator()}, {"anchored over Q[x]/x^3", anchored_pair()}})
    out.push_back({name, lr, trivial_module(*lr)});
  LRPtr g = sl2();
  out.push_back({"sl2 adjoint", g, sl2_adjoint(g)});
  LRPtr a = anchored_pair();
  out.push_back({"anchored, module R", a, base_ring_module(a)});
  return out;
}

PairingContext matrix_context(int p) {
  auto m2 = matrix_algebra(2);
  auto lr = acting_on({{"X", 0}});
  lr->set_action("X", SuperDerivation::inner("ad E11", m2.element("E11")));
  lr->validate();
  return inner_context(m2.algebra, lr, {}, p);
}

PairingContext graded_end_context(int p) {
  auto ge = graded_endomorphisms(1, 1);
  auto lr = acting_on({{"d", 1}});
  lr->set_action("d", ge.derivation("d"));
  lr->validate();
  // the partial-trace space is spanned by str, but its echelon basis vector
  // may be -str; pin the sign so that values are comparable
  PairingContext ctx = inner_context(ge.algebra, lr, {}, p);
  return with_functionals(ctx, {make_partial_trace(ge.trace("str"), ctx.jp)});
}

std::vector<NamedContext> admissible_contexts(int p) {
  std::vector<NamedContext> out;
  out.push_back({"M2 ad(E11)", matrix_context(p)});

  auto m2 = matrix_algebra(2);
  auto g = acting_on({{"e", 0}, {"f", 0}, {"h", 0}});
  g->set_bracket_scalar("e", "f", {{"h", q(1)}});
  g->set_bracket_scalar("h", "e", {{"e", q(2)}});
  g->set_bracket_scalar("h", "f", {{"f", q(-2)}});
  g->set_action("e", SuperDerivation::inner("ad E12", m2.element("E12")));
  g->set_action("f", SuperDerivation::inner("ad E21", m2.element("E21")));
  g->set_action("h", SuperDerivation::inner("ad H", m2.element("E11") - m2.element("E22")));
  g->validate();
  out.push_back({"sl2 on M2", inner_context(m2.algebra, g, {}, p)});

  if (p <= 2) {
    auto tp = truncated_polynomial(3);
    auto lr = acting_on({{"X1", 0}, {"X2", 0}});
    lr->set_bracket_scalar("X1", "X2", {{"X2", q(1)}});
    lr->set_action("X1", tp.derivation("x d/dx"));
    lr->set_action("X2", tp.derivation("x^2 d/dx"));
    lr->validate();
    out.push_back({"Q[x]/x^3, J = (x)", inner_context(tp.algebra, lr, {tp.element("x")}, p)});
  }

  out.push_back({"End(1|1) odd d", graded_end_context(p)});

  auto ge = graded_endomorphisms(1, 1);
  auto gl = acting_on({{"E11", 0}, {"E22", 0}, {"E12", 1}, {"E21", 1}});
  gl->set_bracket_scalar("E12", "E21", {{"E11", q(1)}, {"E22", q(1)}});
  gl->set_bracket_scalar("E11", "E12", {{"E12", q(1)}});
  gl->set_bracket_scalar("E11", "E21", {{"E21", q(-1)}});
  gl->set_bracket_scalar("E22", "E12", {{"E12", q(-1)}});
  gl->set_bracket_scalar("E22", "E21", {{"E21", q(1)}});
  for (const char* id : {"E11", "E22", "E12", "E21"})
    gl->set_action(id, SuperDerivation::inner(std::string("ad ") + id, ge.element(id)));
  gl->validate();
  out.push_back({"gl(1|1) on End(1|1)", inner_context(ge.algebra, gl, {}, p)});
  return out;
}

PairingContext negative_control(int p) {
  PairingContext ctx = matrix_context(p);
  auto e11 = ctx.target->find("E11");
  return with_functionals(ctx, {restrict_functional("c11", ctx.jp, Coeffs{{*e11, q(1)}})});
}

}  // namespace lrcyc::testing
