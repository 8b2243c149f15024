#include "lrcyc/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace lrcyc {

void accumulate(Coeffs& target, const BasisKey& key, const Scalar& value) {
  if (value.is_zero()) return;
  auto [it, inserted] = target.try_emplace(key, value);
  if (!inserted) {
    it->second += value;
    if (it->second.is_zero()) target.erase(it);
  }
}

void accumulate(Coeffs& target, const Coeffs& other, const Scalar& factor) {
  for (const auto& [k, v] : other) accumulate(target, k, v * factor);
}

Coeffs scaled(const Coeffs& c, const Scalar& factor) {
  Coeffs out;
  if (factor.is_zero()) return out;
  for (const auto& [k, v] : c) {
    Scalar s = v * factor;
    if (!s.is_zero()) out.emplace(k, std::move(s));
  }
  return out;
}

Coeffs SuperAlgebra::multiply(const Coeffs& x, const Coeffs& y) const {
  Coeffs out;
  for (const auto& [kx, vx] : x) {
    for (const auto& [ky, vy] : y) {
      Coeffs prod = multiply_basis(kx, ky);
      if (prod.empty()) continue;
      accumulate(out, prod, vx * vy);
    }
  }
  return out;
}

const std::vector<BasisKey>& SuperAlgebra::basis() const {
  throw PreconditionError(kind() + ": algebra has no finite basis");
}

std::size_t SuperAlgebra::index_of(const BasisKey&) const {
  throw PreconditionError(kind() + ": algebra has no finite basis");
}

std::optional<BasisKey> SuperAlgebra::find(std::string_view) const { return std::nullopt; }

// ---------------------------------------------------------------------------

std::shared_ptr<const TableAlgebra> TableAlgebra::create(std::string kind,
                                                         std::vector<BasisElement> basis,
                                                         Coeffs unit, std::vector<Coeffs> table,
                                                         Backend backend) {
  const std::size_t n = basis.size();
  if (n == 0) throw PreconditionError("algebra basis is empty");
  if (table.size() != n * n) throw ShapeMismatch("multiplication table has wrong size");
  std::shared_ptr<TableAlgebra> alg(new TableAlgebra());
  alg->kind_ = std::move(kind);
  alg->backend_ = backend;
  alg->elements_ = std::move(basis);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& e = alg->elements_[i];
    if (e.parity != 0 && e.parity != 1) throw PreconditionError("parity must be 0 or 1: " + e.id);
    BasisKey k{static_cast<std::int32_t>(i), 0};
    alg->keys_.push_back(k);
    if (!alg->by_id_.emplace(e.id, k).second)
      throw PreconditionError("duplicate basis id: " + e.id);
  }
  alg->unit_ = std::move(unit);
  alg->table_ = std::move(table);
  alg->validate();
  return alg;
}

bool TableAlgebra::contains(const BasisKey& k) const {
  return k.b == 0 && k.a >= 0 && static_cast<std::size_t>(k.a) < keys_.size();
}

int TableAlgebra::parity(const BasisKey& k) const { return elements_.at(index_of(k)).parity; }

Coeffs TableAlgebra::multiply_basis(const BasisKey& x, const BasisKey& y) const {
  return table_[index_of(x) * keys_.size() + index_of(y)];
}

std::string TableAlgebra::name(const BasisKey& k) const { return elements_.at(index_of(k)).id; }

std::size_t TableAlgebra::index_of(const BasisKey& k) const {
  if (!contains(k)) throw PreconditionError(kind_ + ": basis key out of range");
  return static_cast<std::size_t>(k.a);
}

std::optional<BasisKey> TableAlgebra::find(std::string_view id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

void TableAlgebra::validate() const {
  const std::size_t n = keys_.size();
  auto check_coeffs = [&](const Coeffs& c, const char* what) {
    for (const auto& [k, v] : c) {
      if (!contains(k)) throw PreconditionError(std::string(what) + " refers to unknown basis key");
      if (v.backend() != backend_) throw BackendMismatch(std::string(what) + ": backend mismatch");
    }
  };
  check_coeffs(unit_, "unit");
  for (const auto& c : unit_)
    if (parity(c.first) != 0) throw PreconditionError("unit has an odd component");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Coeffs& c = table_[i * n + j];
      check_coeffs(c, "product");
      int expected = (elements_[i].parity + elements_[j].parity) % 2;
      for (const auto& [k, v] : c) {
        if (parity(k) != expected)
          throw PreconditionError("product " + elements_[i].id + "*" + elements_[j].id +
                                  " is not parity-additive");
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    Coeffs single{{keys_[i], Scalar::one(backend_)}};
    if (SuperAlgebra::multiply(unit_, single) != single ||
        SuperAlgebra::multiply(single, unit_) != single)
      throw PreconditionError("unit law fails on " + elements_[i].id);
  }
  std::vector<std::array<BasisKey, 3>> triples;
  triples.reserve(n * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) triples.push_back({keys_[i], keys_[j], keys_[k]});
  double tol = backend_ == Backend::Approx ? 1e-9 : 0.0;
  if (associativity_residual(*this, triples) > tol)
    throw PreconditionError(kind_ + ": product is not associative");
}

double associativity_residual(const SuperAlgebra& alg,
                              const std::vector<std::array<BasisKey, 3>>& triples) {
  double worst = 0.0;
  const Scalar one = Scalar::one(alg.backend());
  for (const auto& [x, y, z] : triples) {
    Coeffs cx{{x, one}}, cy{{y, one}}, cz{{z, one}};
    Coeffs left = alg.multiply(alg.multiply(cx, cy), cz);
    Coeffs right = alg.multiply(cx, alg.multiply(cy, cz));
    accumulate(left, right, -one);
    for (const auto& [k, v] : left) worst = std::max(worst, v.magnitude());
  }
  return worst;
}

// ---------------------------------------------------------------------------

AlgebraElement::AlgebraElement(AlgebraPtr alg) : alg_(std::move(alg)) {}

AlgebraElement::AlgebraElement(AlgebraPtr alg, Coeffs coeffs) : alg_(std::move(alg)) {
  for (auto& [k, v] : coeffs) {
    if (!alg_->contains(k)) throw PreconditionError("coefficient on a key outside the algebra");
    if (v.backend() != alg_->backend()) throw BackendMismatch("element backend differs from algebra");
    if (!v.is_zero()) coeffs_.emplace(k, std::move(v));
  }
}

AlgebraElement AlgebraElement::basis(AlgebraPtr alg, const BasisKey& key) {
  Backend b = alg->backend();
  return AlgebraElement(std::move(alg), Coeffs{{key, Scalar::one(b)}});
}

AlgebraElement AlgebraElement::unit(AlgebraPtr alg) {
  Coeffs u = alg->unit();
  return AlgebraElement(std::move(alg), std::move(u));
}

std::optional<int> AlgebraElement::parity() const {
  std::optional<int> p;
  for (const auto& c : coeffs_) {
    int q = alg_->parity(c.first);
    if (p && *p != q) return std::nullopt;
    p = q;
  }
  return p.value_or(0);
}

AlgebraElement AlgebraElement::part(int par) const {
  Coeffs out;
  for (const auto& [k, v] : coeffs_)
    if (alg_->parity(k) == par) out.emplace(k, v);
  return AlgebraElement(alg_, std::move(out));
}

double AlgebraElement::max_magnitude() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, c.second.magnitude());
  return m;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  require_same_algebra(*alg_, *o.alg_);
  accumulate(coeffs_, o.coeffs_, Scalar::one(alg_->backend()));
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  require_same_algebra(*alg_, *o.alg_);
  accumulate(coeffs_, o.coeffs_, -Scalar::one(alg_->backend()));
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(const Scalar& s) {
  coeffs_ = scaled(coeffs_, s);
  return *this;
}

bool AlgebraElement::operator==(const AlgebraElement& o) const {
  return alg_ == o.alg_ && coeffs_ == o.coeffs_;
}

std::string AlgebraElement::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : coeffs_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << v.to_string() << ")*" << alg_->name(k);
  }
  return os.str();
}

void require_same_algebra(const SuperAlgebra& a, const SuperAlgebra& b) {
  if (&a != &b) throw PreconditionError("elements belong to different algebras");
}

AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_algebra(a.algebra(), b.algebra());
  return AlgebraElement(a.algebra_ptr(), a.algebra().multiply(a.coeffs(), b.coeffs()));
}

AlgebraElement super_commutator(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_algebra(a.algebra(), b.algebra());
  AlgebraElement out(a.algebra_ptr());
  for (int pa = 0; pa < 2; ++pa) {
    AlgebraElement x = a.part(pa);
    if (x.is_zero()) continue;
    for (int pb = 0; pb < 2; ++pb) {
      AlgebraElement y = b.part(pb);
      if (y.is_zero()) continue;
      out += mul(x, y);
      if (pa * pb == 1)
        out += mul(y, x);
      else
        out -= mul(y, x);
    }
  }
  return out;
}

}  // namespace lrcyc
