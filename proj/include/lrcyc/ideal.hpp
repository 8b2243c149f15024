#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lrcyc/algebra.hpp"
#include "lrcyc/linalg.hpp"

namespace lrcyc {

/// The p-th power of a two-sided graded ideal J.
///
/// Finite algebras carry an echelon basis of span(J^p) made of homogeneous
/// vectors (even ones first). Countable algebras only support J = B, which is
/// represented by a membership flag.
class IdealPower {
 public:
  const SuperAlgebra& algebra() const { return *alg_; }
  const AlgebraPtr& algebra_ptr() const { return alg_; }
  int degree() const { return degree_; }
  bool is_whole() const { return whole_; }
  bool is_finite() const { return alg_->is_finite(); }

  /// Number of basis vectors of span(J^p); finite case only.
  std::size_t dimension() const;
  /// Basis vectors as algebra elements; finite case only.
  std::vector<AlgebraElement> basis_elements() const;
  int basis_parity(std::size_t i) const { return parities_.at(i); }
  /// Basis vector i as a sparse row over the algebra basis.
  const SparseRow& basis_row(std::size_t i) const { return rows_.at(i); }

  bool contains(const Coeffs& y) const;
  /// Coordinates against basis_elements(); nullopt when y is outside J^p.
  std::optional<Vector> coordinates(const Coeffs& y) const;

  friend std::shared_ptr<const IdealPower> ideal_power_basis(const AlgebraPtr&,
                                                             const std::vector<AlgebraElement>&,
                                                             int);
  friend std::shared_ptr<const IdealPower> whole_algebra(const AlgebraPtr&, int);

 private:
  IdealPower(AlgebraPtr alg, int degree) : alg_(std::move(alg)), degree_(degree) {}
  SparseRow to_row(const Coeffs& y) const;

  AlgebraPtr alg_;
  int degree_;
  bool whole_ = false;
  std::vector<SparseRow> rows_;
  std::vector<int> parities_;
  std::vector<std::size_t> pivots_;
};

using IdealPtr = std::shared_ptr<const IdealPower>;

/// Span of J^p for the ideal generated by homogeneous `generators`, by
/// fixed-point closure under left and right multiplication.
IdealPtr ideal_power_basis(const AlgebraPtr& alg, const std::vector<AlgebraElement>& generators,
                           int p);
/// J = B, so J^p = B. Works for countable algebras too.
IdealPtr whole_algebra(const AlgebraPtr& alg, int p);

/// Homogeneous linear functional on span(J^p).
class PartialTrace {
 public:
  using Rule = std::function<Scalar(const BasisKey&)>;

  /// Values against the basis of a finite J^p.
  PartialTrace(std::string name, int parity, IdealPtr domain, Vector values);
  /// Closed-form values on algebra basis keys; J^p must be the whole algebra.
  PartialTrace(std::string name, int parity, IdealPtr domain, Rule rule);

  const std::string& name() const { return name_; }
  int parity() const { return parity_; }
  const IdealPower& domain() const { return *domain_; }
  const IdealPtr& domain_ptr() const { return domain_; }
  bool has_values() const { return !rule_; }
  const Vector& values() const { return values_; }

  /// Throws OutsideIdeal when y is not in span(J^p).
  Scalar evaluate(const Coeffs& y) const;

 private:
  std::string name_;
  int parity_;
  IdealPtr domain_;
  Vector values_;
  Rule rule_;
};

/// Functional given by its values on algebra basis keys, restricted to J^p.
/// Its support must be homogeneous.
PartialTrace restrict_functional(std::string name, const IdealPtr& domain,
                                 const Coeffs& values_on_basis);

/// Basis of the functionals on J^p that vanish on [B, J^p], even ones first.
std::vector<PartialTrace> partial_trace_space(const AlgebraPtr& alg, const IdealPtr& jp);

/// max |tau([b, j])| over basis b and basis j of J^p (finite case), or over the
/// given sample keys for countable algebras.
double supercommutator_residual(const PartialTrace& tau);
double supercommutator_residual(const PartialTrace& tau, const std::vector<BasisKey>& sample_b,
                                const std::vector<BasisKey>& sample_j);

}  // namespace lrcyc
