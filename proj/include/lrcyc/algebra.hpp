#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lrcyc/scalar.hpp"

namespace lrcyc {

/// Identifies one basis element. Finite algebras use (index, 0); the
/// countable ones use (n, 0) for z^n and (m, n) for U^m V^n.
struct BasisKey {
  std::int32_t a = 0;
  std::int32_t b = 0;
  auto operator<=>(const BasisKey&) const = default;
};

/// Finitely supported coefficient map, no stored zeros.
using Coeffs = std::map<BasisKey, Scalar>;

void accumulate(Coeffs& target, const BasisKey& key, const Scalar& value);
void accumulate(Coeffs& target, const Coeffs& other, const Scalar& factor);
Coeffs scaled(const Coeffs& c, const Scalar& factor);

/// A Z/2-graded associative algebra presented by a basis of homogeneous
/// elements and a product rule on basis pairs.
class SuperAlgebra {
 public:
  virtual ~SuperAlgebra() = default;

  virtual std::string kind() const = 0;
  virtual Backend backend() const = 0;
  virtual bool is_finite() const = 0;
  virtual bool contains(const BasisKey& k) const = 0;
  virtual int parity(const BasisKey& k) const = 0;
  virtual Coeffs unit() const = 0;
  virtual Coeffs multiply_basis(const BasisKey& x, const BasisKey& y) const = 0;
  virtual std::string name(const BasisKey& k) const = 0;

  /// Bilinear extension of multiply_basis.
  virtual Coeffs multiply(const Coeffs& x, const Coeffs& y) const;

  /// Finite algebras only.
  virtual const std::vector<BasisKey>& basis() const;
  virtual std::size_t index_of(const BasisKey& k) const;
  virtual std::optional<BasisKey> find(std::string_view id) const;
  std::size_t dimension() const { return basis().size(); }
};

using AlgebraPtr = std::shared_ptr<const SuperAlgebra>;

/// Finite-dimensional algebra given by a full multiplication table.
class TableAlgebra final : public SuperAlgebra {
 public:
  struct BasisElement {
    std::string id;
    int parity = 0;
  };

  /// `table[i * n + j]` is e_i * e_j. Construction validates the unit laws,
  /// parity additivity and associativity on every basis triple.
  static std::shared_ptr<const TableAlgebra> create(std::string kind,
                                                    std::vector<BasisElement> basis,
                                                    Coeffs unit, std::vector<Coeffs> table,
                                                    Backend backend);

  std::string kind() const override { return kind_; }
  Backend backend() const override { return backend_; }
  bool is_finite() const override { return true; }
  bool contains(const BasisKey& k) const override;
  int parity(const BasisKey& k) const override;
  Coeffs unit() const override { return unit_; }
  Coeffs multiply_basis(const BasisKey& x, const BasisKey& y) const override;
  std::string name(const BasisKey& k) const override;
  const std::vector<BasisKey>& basis() const override { return keys_; }
  std::size_t index_of(const BasisKey& k) const override;
  std::optional<BasisKey> find(std::string_view id) const override;

  const std::vector<BasisElement>& elements() const { return elements_; }

 private:
  TableAlgebra() = default;
  void validate() const;

  std::string kind_;
  Backend backend_ = Backend::Rational;
  std::vector<BasisElement> elements_;
  std::vector<BasisKey> keys_;
  std::map<std::string, BasisKey, std::less<>> by_id_;
  Coeffs unit_;
  std::vector<Coeffs> table_;
};

/// Element of a based algebra. Immutable value semantics apart from the
/// in-place arithmetic operators.
class AlgebraElement {
 public:
  explicit AlgebraElement(AlgebraPtr alg);
  AlgebraElement(AlgebraPtr alg, Coeffs coeffs);

  static AlgebraElement basis(AlgebraPtr alg, const BasisKey& key);
  static AlgebraElement unit(AlgebraPtr alg);

  const SuperAlgebra& algebra() const { return *alg_; }
  const AlgebraPtr& algebra_ptr() const { return alg_; }
  const Coeffs& coeffs() const { return coeffs_; }
  Backend backend() const { return alg_->backend(); }

  bool is_zero() const { return coeffs_.empty(); }
  /// Parity of a homogeneous element (0 for zero); nullopt when mixed.
  std::optional<int> parity() const;
  AlgebraElement part(int parity) const;
  double max_magnitude() const;

  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  AlgebraElement& operator*=(const Scalar& s);
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(AlgebraElement a, const Scalar& s) { return a *= s; }
  friend AlgebraElement operator*(const Scalar& s, AlgebraElement a) { return a *= s; }
  bool operator==(const AlgebraElement& o) const;

  std::string to_string() const;

 private:
  AlgebraPtr alg_;
  Coeffs coeffs_;
};

void require_same_algebra(const SuperAlgebra& a, const SuperAlgebra& b);

AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b);

/// ab - (-1)^{|a||b|} ba, split into homogeneous parts when needed.
AlgebraElement super_commutator(const AlgebraElement& a, const AlgebraElement& b);

/// Largest |(xy)z - x(yz)| over the given triples.
double associativity_residual(const SuperAlgebra& alg,
                              const std::vector<std::array<BasisKey, 3>>& triples);

}  // namespace lrcyc
