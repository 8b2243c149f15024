#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "lrcyc/scalar.hpp"

namespace lrcyc {

using Vector = std::vector<Scalar>;
/// Sparse vector: (index, value) pairs, strictly increasing index, no zeros.
using SparseRow = std::vector<std::pair<std::size_t, Scalar>>;

struct LinalgOptions {
  /// Approximate backend only: a pivot is treated as zero when its magnitude
  /// is at most this fraction of the largest entry of the input.
  double relative_pivot = 1e-9;
};

class SparseMatrix {
 public:
  struct Entry {
    std::size_t row;
    std::size_t col;
    Scalar value;
  };

  SparseMatrix(std::size_t rows, std::size_t cols, Backend backend);

  /// Sums duplicate coordinates, drops zeros and sorts row-major.
  static SparseMatrix from_entries(std::size_t rows, std::size_t cols, Backend backend,
                                   std::vector<Entry> entries);
  static SparseMatrix from_dense(const std::vector<Vector>& rows, std::size_t cols, Backend backend);
  static SparseMatrix identity(std::size_t n, Backend backend);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Backend backend() const { return backend_; }
  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t nonzeros() const { return entries_.size(); }

  SparseMatrix transposed() const;
  /// this * rhs
  SparseMatrix compose(const SparseMatrix& rhs) const;
  Vector apply(const Vector& v) const;
  bool is_zero(double tolerance = 0.0) const;
  double max_magnitude() const;

  std::vector<SparseRow> row_list() const;
  std::vector<SparseRow> column_list() const;
  std::vector<Vector> to_dense() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  Backend backend_;
  std::vector<Entry> entries_;
};

/// Echelon basis of a growing subspace of k^n.
///
/// Rows are stored with a unit leading entry. reduce() returns the canonical
/// remainder of a vector along span(rows) onto the span of the non-pivot
/// coordinates, so it is linear and vanishes exactly on the subspace.
class Subspace {
 public:
  Subspace(std::size_t ambient_dim, Backend backend, LinalgOptions opts = {});

  /// Adds v; returns false when v already lies in the span.
  bool add(const SparseRow& v);
  SparseRow reduce(const SparseRow& v) const;
  bool contains(const SparseRow& v) const { return reduce(v).empty(); }

  std::size_t dimension() const { return pivots_.size(); }
  std::size_t ambient_dimension() const { return dim_; }
  Backend backend() const { return backend_; }

  /// Pivot columns in increasing order.
  std::vector<std::size_t> pivot_columns() const;

 private:
  bool negligible(const Scalar& s) const;

  std::size_t dim_;
  Backend backend_;
  LinalgOptions opts_;
  double scale_ = 0.0;
  std::map<std::size_t, SparseRow> pivots_;
};

/// Rank over the scalar field (numerical rank for the approximate backend).
std::size_t rank(const SparseMatrix& m, LinalgOptions opts = {});

/// Basis of the right null space; size = cols - rank.
std::vector<Vector> kernel_basis(const SparseMatrix& m, LinalgOptions opts = {});

/// Coefficients expressing v in `basis`, or nullopt when v is not in the span.
std::optional<Vector> coordinates_in_span(const Vector& v, const std::vector<Vector>& basis,
                                          LinalgOptions opts = {});

/// dim ker(d_out) - rank(d_in) for a complex  . --d_in--> . --d_out--> .
/// Throws NotAComplex when d_out * d_in != 0.
std::size_t homology_dimension(const SparseMatrix& d_in, const SparseMatrix& d_out,
                               LinalgOptions opts = {});

// Sparse vector helpers.
SparseRow to_sparse(const Vector& v);
Vector to_dense(const SparseRow& v, std::size_t n, Backend backend);
/// target += factor * other
void axpy(SparseRow& target, const Scalar& factor, const SparseRow& other);

}  // namespace lrcyc
