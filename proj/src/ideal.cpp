#include "lrcyc/ideal.hpp"

#include <algorithm>
#include <deque>

namespace lrcyc {

namespace {

SparseRow coeffs_to_row(const SuperAlgebra& alg, const Coeffs& c) {
  SparseRow row;
  row.reserve(c.size());
  for (const auto& [k, v] : c) row.emplace_back(alg.index_of(k), v);
  std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return row;
}

Coeffs row_to_coeffs(const SuperAlgebra& alg, const SparseRow& row) {
  Coeffs c;
  for (const auto& [i, v] : row) c.emplace(alg.basis()[i], v);
  return c;
}

int homogeneous_parity(const SuperAlgebra& alg, const Coeffs& c) {
  int p = -1;
  for (const auto& e : c) {
    int q = alg.parity(e.first);
    if (p >= 0 && p != q) throw PreconditionError("ideal generators must be homogeneous");
    p = q;
  }
  return std::max(p, 0);
}

// Closes span(seeds) under left and right multiplication by basis elements.
void close_two_sided(const SuperAlgebra& alg, std::vector<Subspace>& parts, std::deque<Coeffs> work) {
  const auto& basis = alg.basis();
  const Scalar one = Scalar::one(alg.backend());
  auto push = [&](const Coeffs& c) {
    if (c.empty()) return;
    int q = homogeneous_parity(alg, c);
    if (parts[q].add(coeffs_to_row(alg, c))) work.push_back(c);
  };
  std::deque<Coeffs> seeds;
  seeds.swap(work);
  for (const auto& s : seeds) push(s);
  while (!work.empty()) {
    Coeffs v = std::move(work.front());
    work.pop_front();
    for (const auto& k : basis) {
      Coeffs x{{k, one}};
      push(alg.multiply(x, v));
      push(alg.multiply(v, x));
    }
  }
}

}  // namespace

std::size_t IdealPower::dimension() const {
  if (!alg_->is_finite()) throw PreconditionError("ideal power of a countable algebra has no finite basis");
  return rows_.size();
}

std::vector<AlgebraElement> IdealPower::basis_elements() const {
  std::vector<AlgebraElement> out;
  for (const auto& r : rows_) out.emplace_back(alg_, row_to_coeffs(*alg_, r));
  return out;
}

SparseRow IdealPower::to_row(const Coeffs& y) const { return coeffs_to_row(*alg_, y); }

std::optional<Vector> IdealPower::coordinates(const Coeffs& y) const {
  if (!alg_->is_finite()) throw PreconditionError("coordinates need a finite ideal basis");
  for (const auto& e : y)
    if (!alg_->contains(e.first)) return std::nullopt;
  const Backend b = alg_->backend();
  Vector coords(rows_.size(), Scalar::zero(b));
  SparseRow rest = to_row(y);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    auto it = std::lower_bound(rest.begin(), rest.end(), pivots_[i],
                               [](const auto& e, std::size_t c) { return e.first < c; });
    if (it == rest.end() || it->first != pivots_[i]) continue;
    coords[i] = it->second;
  }
  for (std::size_t i = 0; i < rows_.size(); ++i)
    if (!coords[i].is_zero()) axpy(rest, -coords[i], rows_[i]);
  if (b == Backend::Approx) {
    double scale = 1.0;
    for (const auto& e : y) scale = std::max(scale, e.second.magnitude());
    for (const auto& e : rest)
      if (e.second.magnitude() > 1e-9 * scale) return std::nullopt;
  } else if (!rest.empty()) {
    return std::nullopt;
  }
  return coords;
}

bool IdealPower::contains(const Coeffs& y) const {
  if (whole_) {
    for (const auto& e : y)
      if (!alg_->contains(e.first)) return false;
    return true;
  }
  return coordinates(y).has_value();
}

IdealPtr ideal_power_basis(const AlgebraPtr& alg, const std::vector<AlgebraElement>& generators,
                           int p) {
  if (p < 1) throw PreconditionError("ideal power degree must be at least 1");
  if (!alg->is_finite())
    throw PreconditionError(alg->kind() + ": ideal powers need a finite basis (use whole_algebra)");
  const std::size_t n = alg->dimension();
  const Backend b = alg->backend();

  std::deque<Coeffs> seeds;
  for (const auto& g : generators) {
    require_same_algebra(*alg, g.algebra());
    seeds.push_back(g.coeffs());
  }
  std::vector<Subspace> j1{Subspace(n, b), Subspace(n, b)};
  close_two_sided(*alg, j1, seeds);

  auto extract = [&](const std::vector<Subspace>& parts) {
    std::vector<std::pair<SparseRow, int>> rows;
    for (int q = 0; q < 2; ++q) {
      for (std::size_t c : parts[q].pivot_columns()) {
        SparseRow e{{c, Scalar::one(b)}};
        SparseRow r = parts[q].reduce(e);
        SparseRow row = e;
        axpy(row, -Scalar::one(b), r);
        rows.emplace_back(std::move(row), q);
      }
    }
    return rows;
  };

  auto j1_rows = extract(j1);
  auto current = j1_rows;
  for (int k = 2; k <= p; ++k) {
    std::deque<Coeffs> products;
    for (const auto& [x, qx] : current)
      for (const auto& [y, qy] : j1_rows)
        products.push_back(alg->multiply(row_to_coeffs(*alg, x), row_to_coeffs(*alg, y)));
    std::vector<Subspace> next{Subspace(n, b), Subspace(n, b)};
    close_two_sided(*alg, next, products);
    current = extract(next);
  }

  std::shared_ptr<IdealPower> out(new IdealPower(alg, p));
  for (auto& [row, q] : current) {
    out->pivots_.push_back(row.front().first);
    out->rows_.push_back(std::move(row));
    out->parities_.push_back(q);
  }
  out->whole_ = out->rows_.size() == n;
  return out;
}

IdealPtr whole_algebra(const AlgebraPtr& alg, int p) {
  if (p < 1) throw PreconditionError("ideal power degree must be at least 1");
  std::shared_ptr<IdealPower> out(new IdealPower(alg, p));
  out->whole_ = true;
  if (alg->is_finite()) {
    const Backend b = alg->backend();
    for (int q = 0; q < 2; ++q) {
      for (std::size_t i = 0; i < alg->dimension(); ++i) {
        if (alg->parity(alg->basis()[i]) != q) continue;
        out->rows_.push_back(SparseRow{{i, Scalar::one(b)}});
        out->parities_.push_back(q);
        out->pivots_.push_back(i);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

PartialTrace::PartialTrace(std::string name, int parity, IdealPtr domain, Vector values)
    : name_(std::move(name)), parity_(parity), domain_(std::move(domain)), values_(std::move(values)) {
  if (values_.size() != domain_->dimension())
    throw ShapeMismatch(name_ + ": functional length differs from dim J^p");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i].backend() != domain_->algebra().backend())
      throw BackendMismatch(name_ + ": backend mismatch");
    if (!values_[i].is_zero() && domain_->basis_parity(i) != parity_)
      throw PreconditionError(name_ + ": functional is not homogeneous of parity " +
                              std::to_string(parity_));
  }
}

PartialTrace::PartialTrace(std::string name, int parity, IdealPtr domain, Rule rule)
    : name_(std::move(name)), parity_(parity), domain_(std::move(domain)), rule_(std::move(rule)) {
  if (!domain_->is_whole())
    throw PreconditionError(name_ + ": closed-form functionals need J^p = B");
}

Scalar PartialTrace::evaluate(const Coeffs& y) const {
  const Backend b = domain_->algebra().backend();
  Scalar out = Scalar::zero(b);
  if (rule_) {
    for (const auto& [k, v] : y) {
      if (!domain_->algebra().contains(k)) throw OutsideIdeal(name_ + ": key outside the algebra");
      out += v * rule_(k);
    }
    return out;
  }
  auto coords = domain_->coordinates(y);
  if (!coords) throw OutsideIdeal(name_ + ": argument is not in span(J^p)");
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (!values_[i].is_zero() && !(*coords)[i].is_zero()) out += values_[i] * (*coords)[i];
  return out;
}

PartialTrace restrict_functional(std::string name, const IdealPtr& domain,
                                 const Coeffs& values_on_basis) {
  const SuperAlgebra& alg = domain->algebra();
  int parity = -1;
  for (const auto& [k, v] : values_on_basis) {
    if (!alg.contains(k)) throw PreconditionError(name + ": value on unknown basis key");
    if (v.is_zero()) continue;
    if (parity >= 0 && parity != alg.parity(k))
      throw PreconditionError(name + ": functional mixes parities");
    parity = alg.parity(k);
  }
  parity = std::max(parity, 0);
  if (!alg.is_finite()) {
    auto table = values_on_basis;
    const Backend b = alg.backend();
    return PartialTrace(std::move(name), parity, domain, [table, b](const BasisKey& k) {
      auto it = table.find(k);
      return it == table.end() ? Scalar::zero(b) : it->second;
    });
  }
  Vector vals;
  for (std::size_t i = 0; i < domain->dimension(); ++i) {
    Scalar s = Scalar::zero(alg.backend());
    for (const auto& [c, v] : domain->basis_row(i)) {
      auto it = values_on_basis.find(alg.basis()[c]);
      if (it != values_on_basis.end()) s += v * it->second;
    }
    vals.push_back(std::move(s));
  }
  return PartialTrace(std::move(name), parity, domain, std::move(vals));
}

std::vector<PartialTrace> partial_trace_space(const AlgebraPtr& alg, const IdealPtr& jp) {
  if (&jp->algebra() != alg.get()) throw PreconditionError("ideal belongs to another algebra");
  const std::size_t m = jp->dimension();
  const Backend b = alg->backend();
  auto jbasis = jp->basis_elements();
  std::vector<PartialTrace> out;
  for (int q = 0; q < 2; ++q) {
    std::vector<std::size_t> cols;
    std::vector<std::size_t> local(m, 0);
    for (std::size_t i = 0; i < m; ++i)
      if (jp->basis_parity(i) == q) {
        local[i] = cols.size();
        cols.push_back(i);
      }
    if (cols.empty()) continue;
    std::vector<SparseMatrix::Entry> entries;
    std::size_t row = 0;
    for (const auto& key : alg->basis()) {
      AlgebraElement x = AlgebraElement::basis(alg, key);
      for (std::size_t i = 0; i < m; ++i) {
        if ((alg->parity(key) + jp->basis_parity(i)) % 2 != q) continue;
        AlgebraElement c = super_commutator(x, jbasis[i]);
        if (c.is_zero()) continue;
        auto coords = jp->coordinates(c.coeffs());
        if (!coords) throw PreconditionError("J^p is not an ideal: commutator escapes its span");
        for (std::size_t j = 0; j < m; ++j)
          if (!(*coords)[j].is_zero()) entries.push_back({row, local[j], (*coords)[j]});
        ++row;
      }
    }
    SparseMatrix constraints = SparseMatrix::from_entries(row, cols.size(), b, std::move(entries));
    auto ker = kernel_basis(constraints);
    for (std::size_t t = 0; t < ker.size(); ++t) {
      Vector vals(m, Scalar::zero(b));
      for (std::size_t j = 0; j < cols.size(); ++j) vals[cols[j]] = ker[t][j];
      std::string name = std::string(q == 0 ? "tau" : "tau_odd") + std::to_string(t);
      out.emplace_back(std::move(name), q, jp, std::move(vals));
    }
  }
  return out;
}

double supercommutator_residual(const PartialTrace& tau) {
  const IdealPower& jp = tau.domain();
  const AlgebraPtr& alg = jp.algebra_ptr();
  double worst = 0.0;
  auto jbasis = jp.basis_elements();
  for (const auto& key : alg->basis()) {
    AlgebraElement x = AlgebraElement::basis(alg, key);
    for (const auto& j : jbasis)
      worst = std::max(worst, tau.evaluate(super_commutator(x, j).coeffs()).magnitude());
  }
  return worst;
}

double supercommutator_residual(const PartialTrace& tau, const std::vector<BasisKey>& sample_b,
                                const std::vector<BasisKey>& sample_j) {
  const AlgebraPtr& alg = tau.domain().algebra_ptr();
  double worst = 0.0;
  for (const auto& kb : sample_b)
    for (const auto& kj : sample_j) {
      AlgebraElement c = super_commutator(AlgebraElement::basis(alg, kb), AlgebraElement::basis(alg, kj));
      worst = std::max(worst, tau.evaluate(c.coeffs()).magnitude());
    }
  return worst;
}

}  // namespace lrcyc
