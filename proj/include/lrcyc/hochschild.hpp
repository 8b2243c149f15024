#pragma once

#include <map>
#include <vector>

#include "lrcyc/algebra.hpp"
#include "lrcyc/linalg.hpp"

namespace lrcyc {

using Tuple = std::vector<BasisKey>;

/// Element of A^{(p+1)} as a finitely supported map on basis tuples.
class HochschildChain {
 public:
  HochschildChain(AlgebraPtr alg, int degree);

  /// a_0 (x) ... (x) a_p expanded multilinearly.
  static HochschildChain tensor(const std::vector<AlgebraElement>& factors);
  static HochschildChain basis(AlgebraPtr alg, const Tuple& t);

  const SuperAlgebra& algebra() const { return *alg_; }
  const AlgebraPtr& algebra_ptr() const { return alg_; }
  int degree() const { return degree_; }
  const std::map<Tuple, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  double max_magnitude() const;

  void add(const Tuple& t, const Scalar& v);
  void add(const HochschildChain& o, const Scalar& factor);

  HochschildChain& operator+=(const HochschildChain& o);
  HochschildChain& operator-=(const HochschildChain& o);
  HochschildChain& operator*=(const Scalar& s);
  friend HochschildChain operator+(HochschildChain a, const HochschildChain& b) { return a += b; }
  friend HochschildChain operator-(HochschildChain a, const HochschildChain& b) { return a -= b; }
  friend HochschildChain operator*(const Scalar& s, HochschildChain a) { return a *= s; }
  bool operator==(const HochschildChain& o) const;

  std::string to_string() const;

 private:
  void check_compatible(const HochschildChain& o) const;

  AlgebraPtr alg_;
  int degree_;
  std::map<Tuple, Scalar> terms_;
};

enum class BVariant { Full, Normalized };

const char* b_variant_name(BVariant v);
BVariant parse_b_variant(std::string_view s);

/// (-1)^{|a_p|(|a_0|+...+|a_{p-1}|)}
int rotation_sign(const SuperAlgebra& alg, const Tuple& t);

HochschildChain hoch_b(const HochschildChain& c);
/// (-1)^p eps a_p (x) a_0 (x) ... (x) a_{p-1}
HochschildChain cyclic_t(const HochschildChain& c);
HochschildChain norm_N(const HochschildChain& c);
/// 1 (x) a_0 (x) ... (x) a_p
HochschildChain extra_degeneracy_s(const HochschildChain& c);
/// Full: (1-t) s N. Normalized: s N.
HochschildChain connes_B(const HochschildChain& c, BVariant variant = BVariant::Full);
/// (-1)^p eps a_p a_0 (x) a_1 (x) ... (x) a_{p-1}: the wrap-around face of b.
/// Without the (-1)^p the Lemma 2 sign would alternate with p.
HochschildChain rotate_and_multiply(const HochschildChain& c);

/// b c lies in im(1 - t), i.e. N b c = 0 (valid in characteristic 0).
bool is_cyclic_cycle(const HochschildChain& c);

// Matrices on the standard basis of A^{(p+1)} for finite A: tuple
// (k_0, ..., k_p) has index sum_i idx(k_i) n^{p-i}.
std::size_t chain_space_dim(const SuperAlgebra& alg, int p);
Tuple tuple_at(const SuperAlgebra& alg, int p, std::size_t index);
std::size_t tuple_index(const SuperAlgebra& alg, const Tuple& t);
Vector chain_to_vector(const HochschildChain& c);
HochschildChain vector_to_chain(const AlgebraPtr& alg, int p, const Vector& v);

/// b: C_p -> C_{p-1}; a 0 x n matrix for p = 0.
SparseMatrix b_matrix(const AlgebraPtr& alg, int p);
/// 1 - t on C_p
SparseMatrix one_minus_t_matrix(const AlgebraPtr& alg, int p);
/// B: C_p -> C_{p+1}
SparseMatrix B_matrix(const AlgebraPtr& alg, int p, BVariant variant = BVariant::Full);

std::size_t hh_dim(const AlgebraPtr& alg, int p);
/// Cyclic homology via the quotient complex C_p / im(1 - t); exact backends only.
std::size_t hc_dim(const AlgebraPtr& alg, int p);
/// Representatives of a basis of ker(B: HC_p -> HH_{p+1}), computed with the
/// full B. This subspace stands in for im(S: HC_{p+2} -> HC_p).
std::vector<HochschildChain> ker_B_in_hc(const AlgebraPtr& alg, int p);

/// Whether the cyclic cycle c is killed by B in HH_{p+1}. Exact backends and
/// finite algebras only; nullopt when C_{p+2} is larger than `max_dim`.
std::optional<bool> B_kills_class(const HochschildChain& c, std::size_t max_dim = 1u << 14);

}  // namespace lrcyc
