#include "lrcyc/kernels.hpp"

#include <algorithm>
#include <exception>

namespace lrcyc::kernels {

namespace {

void append_column(std::vector<SparseMatrix::Entry>& out, std::size_t col, SparseRow&& v) {
  for (auto& [r, s] : v) out.push_back({r, col, std::move(s)});
}

}  // namespace

SparseMatrix assemble_columns_serial(std::size_t rows, std::size_t cols, Backend backend,
                                     const ColumnFn& column) {
  std::vector<SparseMatrix::Entry> entries;
  for (std::size_t j = 0; j < cols; ++j) append_column(entries, j, column(j));
  return SparseMatrix::from_entries(rows, cols, backend, std::move(entries));
}

SparseMatrix assemble_columns_parallel(std::size_t rows, std::size_t cols, Backend backend,
                                       const ColumnFn& column) {
  std::vector<SparseRow> computed(cols);
  const long n = static_cast<long>(cols);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 16)
  for (long j = 0; j < n; ++j) {
    try {
      computed[j] = column(static_cast<std::size_t>(j));
    } catch (...) {
#pragma omp critical(lrcyc_kernel_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<SparseMatrix::Entry> entries;
  for (std::size_t j = 0; j < cols; ++j) append_column(entries, j, std::move(computed[j]));
  return SparseMatrix::from_entries(rows, cols, backend, std::move(entries));
}

}  // namespace lrcyc::kernels

namespace lrcyc::kernels {

namespace {

void merge_max(std::vector<double>& acc, const std::vector<double>& v) {
  if (v.size() != acc.size()) throw ShapeMismatch("sample function returned the wrong width");
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = std::max(acc[i], v[i]);
}

}  // namespace

std::vector<double> max_over_samples_serial(std::size_t count, std::size_t width, const SampleFn& fn) {
  std::vector<double> acc(width, 0.0);
  for (std::size_t i = 0; i < count; ++i) merge_max(acc, fn(i));
  return acc;
}

std::vector<double> max_over_samples_parallel(std::size_t count, std::size_t width, const SampleFn& fn) {
  std::vector<std::vector<double>> results(count);
  std::exception_ptr failure;
  const long n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    try {
      results[i] = fn(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(lrcyc_kernel_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<double> acc(width, 0.0);
  for (const auto& r : results) merge_max(acc, r);
  return acc;
}

}  // namespace lrcyc::kernels
