#include "lrcyc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lrcyc {

namespace {

void check_backend(Backend expected, const Scalar& s) {
  if (s.backend() != expected) {
    throw BackendMismatch("matrix backend " + std::string(backend_name(expected)) +
                          " received a " + std::string(backend_name(s.backend())) + " entry");
  }
}

enum class PivotRule { Leading, Largest };

// Gauss-Jordan row space basis. Rows kept fully reduced with unit pivots.
class Rref {
 public:
  Rref(std::size_t width, Backend backend, PivotRule rule, double threshold)
      : width_(width), backend_(backend), rule_(rule), threshold_(threshold) {}

  bool insert(SparseRow row) {
    row = reduce(row);
    if (row.empty()) return false;
    auto pick = row.begin();
    if (rule_ == PivotRule::Largest) {
      pick = std::max_element(row.begin(), row.end(), [](const auto& a, const auto& b) {
        return a.second.magnitude() < b.second.magnitude();
      });
    }
    const std::size_t col = pick->first;
    const Scalar inv = Scalar::one(backend_) / pick->second;
    for (auto& [c, v] : row) v *= inv;
    prune(row);
    for (auto& [pc, prow] : rows_) {
      auto it = std::lower_bound(prow.begin(), prow.end(), col,
                                 [](const auto& e, std::size_t c) { return e.first < c; });
      if (it != prow.end() && it->first == col) {
        Scalar f = -it->second;
        axpy(prow, f, row);
        prune(prow);
      }
    }
    rows_.emplace(col, std::move(row));
    return true;
  }

  SparseRow reduce(SparseRow v) const {
    prune(v);
    // Collect coefficients first: rows have zeros at all other pivot columns.
    std::vector<std::pair<const SparseRow*, Scalar>> steps;
    for (const auto& [c, val] : v) {
      auto it = rows_.find(c);
      if (it != rows_.end()) steps.emplace_back(&it->second, -val);
    }
    for (const auto& [row, f] : steps) axpy(v, f, *row);
    prune(v);
    return v;
  }

  const std::map<std::size_t, SparseRow>& rows() const { return rows_; }
  std::size_t width() const { return width_; }

 private:
  void prune(SparseRow& r) const {
    if (backend_ != Backend::Approx) return;
    std::erase_if(r, [&](const auto& e) { return e.second.magnitude() <= threshold_; });
  }

  std::size_t width_;
  Backend backend_;
  PivotRule rule_;
  double threshold_;
  std::map<std::size_t, SparseRow> rows_;
};

Rref build_rref(const SparseMatrix& m, PivotRule rule, const LinalgOptions& opts) {
  const double threshold = opts.relative_pivot * m.max_magnitude();
  Rref r(m.cols(), m.backend(), rule, threshold);
  for (auto& row : m.row_list()) r.insert(std::move(row));
  return r;
}

}  // namespace

// ---------------------------------------------------------------- helpers

SparseRow to_sparse(const Vector& v) {
  SparseRow out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) out.emplace_back(i, v[i]);
  return out;
}

Vector to_dense(const SparseRow& v, std::size_t n, Backend backend) {
  Vector out(n, Scalar::zero(backend));
  for (const auto& [i, s] : v) {
    if (i >= n) throw ShapeMismatch("sparse index out of range");
    out[i] = s;
  }
  return out;
}

void axpy(SparseRow& target, const Scalar& factor, const SparseRow& other) {
  if (factor.is_zero() || other.empty()) return;
  SparseRow out;
  out.reserve(target.size() + other.size());
  auto a = target.begin();
  auto b = other.begin();
  while (a != target.end() || b != other.end()) {
    if (b == other.end() || (a != target.end() && a->first < b->first)) {
      out.push_back(std::move(*a++));
    } else if (a == target.end() || b->first < a->first) {
      out.emplace_back(b->first, factor * b->second);
      ++b;
    } else {
      Scalar s = a->second + factor * b->second;
      if (!s.is_zero()) out.emplace_back(a->first, std::move(s));
      ++a;
      ++b;
    }
  }
  target = std::move(out);
}

// ----------------------------------------------------------- SparseMatrix

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols, Backend backend)
    : rows_(rows), cols_(cols), backend_(backend) {}

SparseMatrix SparseMatrix::from_entries(std::size_t rows, std::size_t cols, Backend backend,
                                        std::vector<Entry> entries) {
  SparseMatrix m(rows, cols, backend);
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  for (auto& e : entries) {
    if (e.row >= rows || e.col >= cols) {
      throw ShapeMismatch("entry (" + std::to_string(e.row) + "," + std::to_string(e.col) +
                          ") outside " + std::to_string(rows) + "x" + std::to_string(cols));
    }
    check_backend(backend, e.value);
    if (!m.entries_.empty() && m.entries_.back().row == e.row && m.entries_.back().col == e.col) {
      m.entries_.back().value += e.value;
    } else {
      m.entries_.push_back(std::move(e));
    }
  }
  std::erase_if(m.entries_, [](const Entry& e) { return e.value.is_zero(); });
  return m;
}

SparseMatrix SparseMatrix::from_dense(const std::vector<Vector>& rows, std::size_t cols,
                                      Backend backend) {
  std::vector<Entry> e;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw ShapeMismatch("ragged dense matrix");
    for (std::size_t c = 0; c < cols; ++c)
      if (!rows[r][c].is_zero()) e.push_back({r, c, rows[r][c]});
  }
  return from_entries(rows.size(), cols, backend, std::move(e));
}

SparseMatrix SparseMatrix::identity(std::size_t n, Backend backend) {
  std::vector<Entry> e;
  for (std::size_t i = 0; i < n; ++i) e.push_back({i, i, Scalar::one(backend)});
  return from_entries(n, n, backend, std::move(e));
}

SparseMatrix SparseMatrix::transposed() const {
  std::vector<Entry> e;
  e.reserve(entries_.size());
  for (const auto& x : entries_) e.push_back({x.col, x.row, x.value});
  return from_entries(cols_, rows_, backend_, std::move(e));
}

SparseMatrix SparseMatrix::compose(const SparseMatrix& rhs) const {
  if (cols_ != rhs.rows_) {
    throw ShapeMismatch("cannot compose " + std::to_string(rows_) + "x" + std::to_string(cols_) +
                        " with " + std::to_string(rhs.rows_) + "x" + std::to_string(rhs.cols_));
  }
  if (backend_ != rhs.backend_) throw BackendMismatch("composing matrices of different backends");
  auto rhs_rows = rhs.row_list();
  std::vector<Entry> out;
  std::vector<SparseRow> lhs_rows = row_list();
  for (std::size_t r = 0; r < rows_; ++r) {
    SparseRow acc;
    for (const auto& [k, v] : lhs_rows[r]) axpy(acc, v, rhs_rows[k]);
    for (auto& [c, v] : acc) out.push_back({r, c, std::move(v)});
  }
  return from_entries(rows_, rhs.cols_, backend_, std::move(out));
}

Vector SparseMatrix::apply(const Vector& v) const {
  if (v.size() != cols_) throw ShapeMismatch("vector length does not match column count");
  Vector out(rows_, Scalar::zero(backend_));
  for (const auto& e : entries_) out[e.row] += e.value * v[e.col];
  return out;
}

bool SparseMatrix::is_zero(double tolerance) const {
  for (const auto& e : entries_)
    if (e.value.magnitude() > tolerance) return false;
  return true;
}

double SparseMatrix::max_magnitude() const {
  double m = 0.0;
  for (const auto& e : entries_) m = std::max(m, e.value.magnitude());
  return m;
}

std::vector<SparseRow> SparseMatrix::row_list() const {
  std::vector<SparseRow> rows(rows_);
  for (const auto& e : entries_) rows[e.row].emplace_back(e.col, e.value);
  return rows;
}

std::vector<SparseRow> SparseMatrix::column_list() const { return transposed().row_list(); }

std::vector<Vector> SparseMatrix::to_dense() const {
  std::vector<Vector> out(rows_, Vector(cols_, Scalar::zero(backend_)));
  for (const auto& e : entries_) out[e.row][e.col] = e.value;
  return out;
}

// --------------------------------------------------------------- Subspace

Subspace::Subspace(std::size_t ambient_dim, Backend backend, LinalgOptions opts)
    : dim_(ambient_dim), backend_(backend), opts_(opts) {}

bool Subspace::negligible(const Scalar& s) const {
  if (backend_ != Backend::Approx) return s.is_zero();
  return s.magnitude() <= opts_.relative_pivot * scale_;
}

SparseRow Subspace::reduce(const SparseRow& v) const {
  SparseRow out = v;
  std::vector<std::pair<const SparseRow*, Scalar>> steps;
  for (const auto& [c, val] : v) {
    if (c >= dim_) throw ShapeMismatch("vector index outside ambient dimension");
    check_backend(backend_, val);
    auto it = pivots_.find(c);
    if (it != pivots_.end()) steps.emplace_back(&it->second, -val);
  }
  for (const auto& [row, f] : steps) axpy(out, f, *row);
  std::erase_if(out, [&](const auto& e) { return negligible(e.second); });
  return out;
}

bool Subspace::add(const SparseRow& v) {
  if (backend_ == Backend::Approx)
    for (const auto& e : v) scale_ = std::max(scale_, e.second.magnitude());
  SparseRow row = reduce(v);
  if (row.empty()) return false;
  const std::size_t col = row.front().first;
  const Scalar inv = Scalar::one(backend_) / row.front().second;
  for (auto& e : row) e.second *= inv;
  for (auto& [pc, prow] : pivots_) {
    auto it = std::lower_bound(prow.begin(), prow.end(), col,
                               [](const auto& e, std::size_t c) { return e.first < c; });
    if (it != prow.end() && it->first == col) {
      Scalar f = -it->second;
      axpy(prow, f, row);
    }
  }
  pivots_.emplace(col, std::move(row));
  return true;
}

std::vector<std::size_t> Subspace::pivot_columns() const {
  std::vector<std::size_t> out;
  for (const auto& [c, r] : pivots_) out.push_back(c);
  return out;
}

// ---------------------------------------------------------- public solvers

std::size_t rank(const SparseMatrix& m, LinalgOptions opts) {
  const auto rule = m.backend() == Backend::Approx ? PivotRule::Largest : PivotRule::Leading;
  // Eliminate along the shorter side.
  if (m.rows() > m.cols()) return build_rref(m.transposed(), rule, opts).rows().size();
  return build_rref(m, rule, opts).rows().size();
}

std::vector<Vector> kernel_basis(const SparseMatrix& m, LinalgOptions opts) {
  const auto rule = m.backend() == Backend::Approx ? PivotRule::Largest : PivotRule::Leading;
  Rref r = build_rref(m, rule, opts);
  std::vector<bool> is_pivot(m.cols(), false);
  for (const auto& [c, row] : r.rows()) is_pivot[c] = true;
  std::vector<std::size_t> free_index(m.cols(), 0);
  std::vector<Vector> out;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (is_pivot[c]) continue;
    free_index[c] = out.size();
    Vector v(m.cols(), Scalar::zero(m.backend()));
    v[c] = Scalar::one(m.backend());
    out.push_back(std::move(v));
  }
  for (const auto& [pc, row] : r.rows()) {
    for (const auto& [c, val] : row) {
      if (c == pc || is_pivot[c]) continue;
      out[free_index[c]][pc] = -val;
    }
  }
  return out;
}

std::optional<Vector> coordinates_in_span(const Vector& v, const std::vector<Vector>& basis,
                                          LinalgOptions opts) {
  const std::size_t n = v.size();
  const std::size_t k = basis.size();
  Backend backend = n > 0 ? v.front().backend() : (k > 0 && !basis[0].empty()
                                                        ? basis[0].front().backend()
                                                        : Backend::Rational);
  for (const auto& b : basis) {
    if (b.size() != n) throw ShapeMismatch("basis vector length differs from v");
  }
  std::vector<SparseMatrix::Entry> e;
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (!basis[j][i].is_zero()) e.push_back({i, j, basis[j][i]});
  for (std::size_t i = 0; i < n; ++i)
    if (!v[i].is_zero()) e.push_back({i, k, v[i]});
  SparseMatrix m = SparseMatrix::from_entries(n, k + 1, backend, std::move(e));
  Rref r = build_rref(m, PivotRule::Leading, opts);
  if (r.rows().count(k)) return std::nullopt;
  Vector coeffs(k, Scalar::zero(backend));
  for (const auto& [pc, row] : r.rows()) {
    for (const auto& [c, val] : row)
      if (c == k) coeffs[pc] = val;
  }
  return coeffs;
}

std::size_t homology_dimension(const SparseMatrix& d_in, const SparseMatrix& d_out,
                               LinalgOptions opts) {
  if (d_out.cols() != d_in.rows()) {
    throw ShapeMismatch("d_out has " + std::to_string(d_out.cols()) + " columns but d_in has " +
                        std::to_string(d_in.rows()) + " rows");
  }
  if (d_in.backend() != d_out.backend()) throw BackendMismatch("complex mixes backends");
  SparseMatrix comp = d_out.compose(d_in);
  double tol = 0.0;
  if (d_in.backend() == Backend::Approx) {
    tol = opts.relative_pivot * std::max(1.0, d_in.max_magnitude() * d_out.max_magnitude()) *
          static_cast<double>(std::max<std::size_t>(1, d_in.rows()));
  }
  if (!comp.is_zero(tol)) throw NotAComplex("d_out composed with d_in is not zero");
  const std::size_t ker = d_out.cols() - rank(d_out, opts);
  return ker - rank(d_in, opts);
}

}  // namespace lrcyc
