#include "lrcyc/derivation.hpp"

#include <algorithm>

namespace lrcyc {

SuperDerivation::SuperDerivation(std::string name, int parity, AlgebraPtr alg, Rule rule,
                                 int two_pi_power)
    : name_(std::move(name)),
      parity_(parity),
      alg_(std::move(alg)),
      rule_(std::move(rule)),
      two_pi_power_(two_pi_power) {
  if (parity_ != 0 && parity_ != 1) throw PreconditionError("derivation parity must be 0 or 1");
}

SuperDerivation SuperDerivation::from_table(std::string name, int parity, AlgebraPtr alg,
                                            std::map<BasisKey, Coeffs> table) {
  for (const auto& [k, img] : table) {
    if (!alg->contains(k)) throw PreconditionError(name + ": action on unknown basis key");
    for (const auto& [k2, v] : img) {
      if (!alg->contains(k2)) throw PreconditionError(name + ": value outside the algebra");
      if (alg->parity(k2) != (alg->parity(k) + parity) % 2)
        throw PreconditionError(name + ": action does not have parity " + std::to_string(parity));
      if (v.backend() != alg->backend()) throw BackendMismatch(name + ": backend mismatch");
    }
  }
  auto shared = std::make_shared<const std::map<BasisKey, Coeffs>>(std::move(table));
  return SuperDerivation(std::move(name), parity, std::move(alg), [shared](const BasisKey& k) {
    auto it = shared->find(k);
    return it == shared->end() ? Coeffs{} : it->second;
  });
}

SuperDerivation SuperDerivation::inner(std::string name, const AlgebraElement& z) {
  auto par = z.parity();
  if (!par) throw PreconditionError("inner derivation needs a homogeneous element");
  AlgebraPtr alg = z.algebra_ptr();
  AlgebraElement zc = z;
  return SuperDerivation(std::move(name), *par, alg, [alg, zc](const BasisKey& k) {
    return super_commutator(zc, AlgebraElement::basis(alg, k)).coeffs();
  });
}

Coeffs SuperDerivation::apply(const Coeffs& c) const {
  Coeffs out;
  for (const auto& [k, v] : c) accumulate(out, rule_(k), v);
  return out;
}

AlgebraElement apply_derivation(const SuperDerivation& d, const AlgebraElement& a) {
  require_same_algebra(d.algebra(), a.algebra());
  return AlgebraElement(a.algebra_ptr(), d.apply(a.coeffs()));
}

double check_leibniz(const SuperDerivation& d,
                     const std::vector<std::pair<AlgebraElement, AlgebraElement>>& samples) {
  double worst = apply_derivation(d, AlgebraElement::unit(d.algebra_ptr())).max_magnitude();
  for (const auto& [x, y] : samples) {
    auto px = x.parity();
    if (!px) throw PreconditionError("check_leibniz: first sample element must be homogeneous");
    AlgebraElement r = apply_derivation(d, mul(x, y));
    r -= mul(apply_derivation(d, x), y);
    if (d.parity() * *px == 1)
      r += mul(x, apply_derivation(d, y));
    else
      r -= mul(x, apply_derivation(d, y));
    worst = std::max(worst, r.max_magnitude());
  }
  return worst;
}

std::vector<std::pair<AlgebraElement, AlgebraElement>> all_basis_pairs(const AlgebraPtr& alg) {
  std::vector<std::pair<AlgebraElement, AlgebraElement>> out;
  for (const auto& x : alg->basis())
    for (const auto& y : alg->basis())
      out.emplace_back(AlgebraElement::basis(alg, x), AlgebraElement::basis(alg, y));
  return out;
}

}  // namespace lrcyc
