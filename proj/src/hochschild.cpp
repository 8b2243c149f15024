#include "lrcyc/hochschild.hpp"

#include <algorithm>
#include <sstream>

#include "lrcyc/kernels.hpp"

namespace lrcyc {

HochschildChain::HochschildChain(AlgebraPtr alg, int degree) : alg_(std::move(alg)), degree_(degree) {
  if (degree_ < 0) throw PreconditionError("Hochschild degree must be nonnegative");
}

HochschildChain HochschildChain::tensor(const std::vector<AlgebraElement>& factors) {
  if (factors.empty()) throw PreconditionError("tensor of no factors");
  const AlgebraPtr& alg = factors.front().algebra_ptr();
  for (const auto& f : factors) require_same_algebra(*alg, f.algebra());
  HochschildChain out(alg, static_cast<int>(factors.size()) - 1);
  std::vector<std::pair<Tuple, Scalar>> partial{{Tuple{}, Scalar::one(alg->backend())}};
  for (const auto& f : factors) {
    std::vector<std::pair<Tuple, Scalar>> next;
    for (const auto& [t, v] : partial)
      for (const auto& [k, c] : f.coeffs()) {
        Tuple u = t;
        u.push_back(k);
        next.emplace_back(std::move(u), v * c);
      }
    partial = std::move(next);
  }
  for (const auto& [t, v] : partial) out.add(t, v);
  return out;
}

HochschildChain HochschildChain::basis(AlgebraPtr alg, const Tuple& t) {
  if (t.empty()) throw PreconditionError("empty tuple");
  HochschildChain out(alg, static_cast<int>(t.size()) - 1);
  out.add(t, Scalar::one(alg->backend()));
  return out;
}

double HochschildChain::max_magnitude() const {
  double m = 0.0;
  for (const auto& e : terms_) m = std::max(m, e.second.magnitude());
  return m;
}

void HochschildChain::add(const Tuple& t, const Scalar& v) {
  if (static_cast<int>(t.size()) != degree_ + 1) throw ShapeMismatch("tuple length differs from degree + 1");
  if (v.is_zero()) return;
  if (v.backend() != alg_->backend()) throw BackendMismatch("chain coefficient backend mismatch");
  auto [it, inserted] = terms_.try_emplace(t, v);
  if (!inserted) {
    it->second += v;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void HochschildChain::check_compatible(const HochschildChain& o) const {
  require_same_algebra(*alg_, *o.alg_);
  if (degree_ != o.degree_) throw ShapeMismatch("Hochschild chains of different degree");
}

void HochschildChain::add(const HochschildChain& o, const Scalar& factor) {
  check_compatible(o);
  for (const auto& [t, v] : o.terms_) add(t, v * factor);
}

HochschildChain& HochschildChain::operator+=(const HochschildChain& o) {
  add(o, Scalar::one(alg_->backend()));
  return *this;
}

HochschildChain& HochschildChain::operator-=(const HochschildChain& o) {
  add(o, -Scalar::one(alg_->backend()));
  return *this;
}

HochschildChain& HochschildChain::operator*=(const Scalar& s) {
  std::map<Tuple, Scalar> out;
  for (auto& [t, v] : terms_) {
    Scalar w = v * s;
    if (!w.is_zero()) out.emplace(t, std::move(w));
  }
  terms_ = std::move(out);
  return *this;
}

bool HochschildChain::operator==(const HochschildChain& o) const {
  return alg_ == o.alg_ && degree_ == o.degree_ && terms_ == o.terms_;
}

std::string HochschildChain::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [t, v] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << v.to_string() << ")";
    for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "(x)" : "*") << alg_->name(t[i]);
  }
  return os.str();
}

const char* b_variant_name(BVariant v) { return v == BVariant::Full ? "full" : "normalized"; }

BVariant parse_b_variant(std::string_view s) {
  if (s == "full") return BVariant::Full;
  if (s == "normalized") return BVariant::Normalized;
  throw PreconditionError("unknown B variant: " + std::string(s));
}

int rotation_sign(const SuperAlgebra& alg, const Tuple& t) {
  if (alg.parity(t.back()) == 0) return 1;
  int rest = 0;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) rest += alg.parity(t[i]);
  return rest % 2 ? -1 : 1;
}

HochschildChain hoch_b(const HochschildChain& c) {
  const int p = c.degree();
  if (p < 1) throw PreconditionError("b needs degree >= 1");
  const SuperAlgebra& alg = c.algebra();
  HochschildChain out(c.algebra_ptr(), p - 1);
  for (const auto& [t, v] : c.terms()) {
    for (int i = 0; i < p; ++i) {
      Coeffs prod = alg.multiply_basis(t[i], t[i + 1]);
      if (prod.empty()) continue;
      Tuple u;
      u.reserve(p);
      u.insert(u.end(), t.begin(), t.begin() + i);
      u.push_back({});
      u.insert(u.end(), t.begin() + i + 2, t.end());
      const Scalar f = i % 2 ? -v : v;
      for (const auto& [k, s] : prod) {
        u[i] = k;
        out.add(u, f * s);
      }
    }
  }
  out += rotate_and_multiply(c);
  return out;
}

HochschildChain rotate_and_multiply(const HochschildChain& c) {
  const int p = c.degree();
  if (p < 1) throw PreconditionError("rotate_and_multiply needs degree >= 1");
  const SuperAlgebra& alg = c.algebra();
  HochschildChain out(c.algebra_ptr(), p - 1);
  for (const auto& [t, v] : c.terms()) {
    Coeffs prod = alg.multiply_basis(t[p], t[0]);
    if (prod.empty()) continue;
    const int sign = (p % 2 ? -1 : 1) * rotation_sign(alg, t);
    Tuple u(t.begin(), t.end() - 1);
    const Scalar f = sign < 0 ? -v : v;
    for (const auto& [k, s] : prod) {
      u[0] = k;
      out.add(u, f * s);
    }
  }
  return out;
}

HochschildChain cyclic_t(const HochschildChain& c) {
  const int p = c.degree();
  const SuperAlgebra& alg = c.algebra();
  HochschildChain out(c.algebra_ptr(), p);
  for (const auto& [t, v] : c.terms()) {
    const int sign = (p % 2 ? -1 : 1) * rotation_sign(alg, t);
    Tuple u;
    u.reserve(t.size());
    u.push_back(t.back());
    u.insert(u.end(), t.begin(), t.end() - 1);
    out.add(u, sign < 0 ? -v : v);
  }
  return out;
}

HochschildChain norm_N(const HochschildChain& c) {
  HochschildChain out = c;
  HochschildChain power = c;
  for (int k = 1; k <= c.degree(); ++k) {
    power = cyclic_t(power);
    out += power;
  }
  return out;
}

HochschildChain extra_degeneracy_s(const HochschildChain& c) {
  HochschildChain out(c.algebra_ptr(), c.degree() + 1);
  const Coeffs unit = c.algebra().unit();
  for (const auto& [t, v] : c.terms()) {
    Tuple u;
    u.reserve(t.size() + 1);
    u.push_back({});
    u.insert(u.end(), t.begin(), t.end());
    for (const auto& [k, s] : unit) {
      u[0] = k;
      out.add(u, v * s);
    }
  }
  return out;
}

HochschildChain connes_B(const HochschildChain& c, BVariant variant) {
  HochschildChain sn = extra_degeneracy_s(norm_N(c));
  if (variant == BVariant::Normalized) return sn;
  return sn - cyclic_t(sn);
}

bool is_cyclic_cycle(const HochschildChain& c) {
  if (c.degree() == 0) return true;
  return norm_N(hoch_b(c)).is_zero();
}

// --------------------------------------------------------------- matrices

std::size_t chain_space_dim(const SuperAlgebra& alg, int p) {
  std::size_t n = alg.dimension(), d = 1;
  for (int i = 0; i <= p; ++i) d *= n;
  return d;
}

Tuple tuple_at(const SuperAlgebra& alg, int p, std::size_t index) {
  const std::size_t n = alg.dimension();
  Tuple t(p + 1);
  for (int i = p; i >= 0; --i) {
    t[i] = alg.basis()[index % n];
    index /= n;
  }
  return t;
}

std::size_t tuple_index(const SuperAlgebra& alg, const Tuple& t) {
  const std::size_t n = alg.dimension();
  std::size_t idx = 0;
  for (const auto& k : t) idx = idx * n + alg.index_of(k);
  return idx;
}

Vector chain_to_vector(const HochschildChain& c) {
  Vector v(chain_space_dim(c.algebra(), c.degree()), Scalar::zero(c.algebra().backend()));
  for (const auto& [t, s] : c.terms()) v[tuple_index(c.algebra(), t)] = s;
  return v;
}

HochschildChain vector_to_chain(const AlgebraPtr& alg, int p, const Vector& v) {
  if (v.size() != chain_space_dim(*alg, p)) throw ShapeMismatch("vector length differs from dim C_p");
  HochschildChain out(alg, p);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) out.add(tuple_at(*alg, p, i), v[i]);
  return out;
}

namespace {

SparseRow chain_to_sparse(const HochschildChain& c) {
  SparseRow r;
  r.reserve(c.terms().size());
  for (const auto& [t, s] : c.terms()) r.emplace_back(tuple_index(c.algebra(), t), s);
  std::sort(r.begin(), r.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return r;
}

template <class Op>
SparseMatrix operator_matrix(const AlgebraPtr& alg, int p_in, int p_out, Op op) {
  if (!alg->is_finite()) throw PreconditionError(alg->kind() + ": chain matrices need a finite basis");
  const std::size_t cols = chain_space_dim(*alg, p_in);
  const std::size_t rows = p_out < 0 ? 0 : chain_space_dim(*alg, p_out);
  if (p_out < 0) return SparseMatrix(0, cols, alg->backend());
  return kernels::assemble_columns_parallel(rows, cols, alg->backend(), [&](std::size_t j) {
    return chain_to_sparse(op(HochschildChain::basis(alg, tuple_at(*alg, p_in, j))));
  });
}

void require_exact(const SuperAlgebra& alg, const char* what) {
  if (alg.backend() == Backend::Approx)
    throw PreconditionError(std::string(what) + " needs an exact backend");
}

}  // namespace

SparseMatrix b_matrix(const AlgebraPtr& alg, int p) {
  return operator_matrix(alg, p, p - 1, [](const HochschildChain& c) { return hoch_b(c); });
}

SparseMatrix one_minus_t_matrix(const AlgebraPtr& alg, int p) {
  return operator_matrix(alg, p, p, [](const HochschildChain& c) { return c - cyclic_t(c); });
}

SparseMatrix B_matrix(const AlgebraPtr& alg, int p, BVariant variant) {
  return operator_matrix(alg, p, p + 1, [variant](const HochschildChain& c) { return connes_B(c, variant); });
}

std::size_t hh_dim(const AlgebraPtr& alg, int p) {
  if (p < 0) throw PreconditionError("negative degree");
  return homology_dimension(b_matrix(alg, p + 1), b_matrix(alg, p));
}

namespace {

// Rank of the composite C -> target -> target / span(sub), columns given by m.
std::size_t rank_modulo(const SparseMatrix& m, const Subspace& sub) {
  std::vector<SparseMatrix::Entry> entries;
  auto cols = m.column_list();
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (auto& [r, s] : sub.reduce(cols[j])) entries.push_back({r, j, s});
  return rank(SparseMatrix::from_entries(m.rows(), m.cols(), m.backend(), std::move(entries)));
}

Subspace column_span(const SparseMatrix& m) {
  Subspace s(m.rows(), m.backend());
  for (const auto& c : m.column_list()) s.add(c);
  return s;
}

}  // namespace

std::size_t hc_dim(const AlgebraPtr& alg, int p) {
  if (p < 0) throw PreconditionError("negative degree");
  require_exact(*alg, "hc_dim");
  const std::size_t n_p = chain_space_dim(*alg, p);
  // {z : b z in im(1-t)}
  std::size_t cycles = n_p;
  if (p > 0) cycles -= rank_modulo(b_matrix(alg, p), column_span(one_minus_t_matrix(alg, p - 1)));
  // im b_{p+1} + im(1-t)_p
  Subspace d = column_span(b_matrix(alg, p + 1));
  for (const auto& c : one_minus_t_matrix(alg, p).column_list()) d.add(c);
  return cycles - d.dimension();
}

std::vector<HochschildChain> ker_B_in_hc(const AlgebraPtr& alg, int p) {
  if (p < 0) throw PreconditionError("negative degree");
  require_exact(*alg, "ker_B_in_hc");
  const Backend bk = alg->backend();
  const std::size_t n_p = chain_space_dim(*alg, p);
  const std::size_t n_lo = p > 0 ? chain_space_dim(*alg, p - 1) : 0;
  const std::size_t n_hi = chain_space_dim(*alg, p + 1);

  // z with b z in im(1-t)_{p-1} and B z in im b_{p+2}: kernel of the stacked
  // map into (C_{p-1} / im(1-t)) + (C_{p+1} / im b).
  std::vector<SparseMatrix::Entry> entries;
  if (p > 0) {
    Subspace cyc = column_span(one_minus_t_matrix(alg, p - 1));
    auto cols = b_matrix(alg, p).column_list();
    for (std::size_t j = 0; j < n_p; ++j)
      for (auto& [r, s] : cyc.reduce(cols[j])) entries.push_back({r, j, s});
  }
  {
    Subspace bnd = column_span(b_matrix(alg, p + 2));
    auto cols = B_matrix(alg, p, BVariant::Full).column_list();
    for (std::size_t j = 0; j < n_p; ++j)
      for (auto& [r, s] : bnd.reduce(cols[j])) entries.push_back({n_lo + r, j, s});
  }
  auto kernel = kernel_basis(SparseMatrix::from_entries(n_lo + n_hi, n_p, bk, std::move(entries)));

  Subspace quotient = column_span(b_matrix(alg, p + 1));
  for (const auto& c : one_minus_t_matrix(alg, p).column_list()) quotient.add(c);
  std::vector<HochschildChain> reps;
  for (const auto& v : kernel)
    if (quotient.add(to_sparse(v))) reps.push_back(vector_to_chain(alg, p, v));
  return reps;
}

std::optional<bool> B_kills_class(const HochschildChain& c, std::size_t max_dim) {
  const SuperAlgebra& alg = c.algebra();
  if (!alg.is_finite() || alg.backend() == Backend::Approx) return std::nullopt;
  if (chain_space_dim(alg, c.degree() + 2) > max_dim) return std::nullopt;
  HochschildChain bc = connes_B(c, BVariant::Full);
  Subspace bnd = column_span(b_matrix(c.algebra_ptr(), c.degree() + 2));
  return bnd.contains(chain_to_sparse(bc));
}

}  // namespace lrcyc
