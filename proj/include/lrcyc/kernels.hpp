#pragma once

// Hot loops in two forms: an OpenMP version used by the library and a plain
// serial version kept as the reference for tests and benchmarks. Both give
// results in a fixed summation order, so the parallel output does not depend
// on the thread count.

#include "lrcyc/algebra.hpp"

namespace lrcyc {
class QuantumTorus;
}

namespace lrcyc::kernels {

/// Term-by-term product through QuantumTorus::multiply_basis.
Coeffs torus_product_serial(const QuantumTorus& alg, const Coeffs& x, const Coeffs& y);
/// Dense product over the bounding boxes of the two supports, parallel over
/// output columns. Falls back to the serial loop for very sparse inputs.
Coeffs torus_product_parallel(const QuantumTorus& alg, const Coeffs& x, const Coeffs& y);

}  // namespace lrcyc::kernels

#include <functional>

#include "lrcyc/linalg.hpp"

namespace lrcyc::kernels {

/// Column j of a matrix as a sparse vector (any index order, no duplicates).
using ColumnFn = std::function<SparseRow(std::size_t col)>;

SparseMatrix assemble_columns_serial(std::size_t rows, std::size_t cols, Backend backend,
                                     const ColumnFn& column);
/// Columns are computed concurrently and concatenated in column order.
SparseMatrix assemble_columns_parallel(std::size_t rows, std::size_t cols, Backend backend,
                                       const ColumnFn& column);

}  // namespace lrcyc::kernels

namespace lrcyc::kernels {

/// Per-sample measurements; the sweep returns the componentwise maximum.
using SampleFn = std::function<std::vector<double>(std::size_t index)>;

std::vector<double> max_over_samples_serial(std::size_t count, std::size_t width, const SampleFn& fn);
/// Samples run concurrently; the maximum does not depend on the schedule.
std::vector<double> max_over_samples_parallel(std::size_t count, std::size_t width, const SampleFn& fn);

}  // namespace lrcyc::kernels
