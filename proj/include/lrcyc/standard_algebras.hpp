#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "lrcyc/algebra.hpp"
#include "lrcyc/derivation.hpp"
#include "lrcyc/ideal.hpp"

namespace lrcyc {

/// A functional on basis keys, not yet tied to an ideal power.
struct Functional {
  std::string name;
  int parity = 0;
  std::function<Scalar(const BasisKey&)> rule;
};

PartialTrace make_partial_trace(const Functional& f, const IdealPtr& domain);

/// An algebra with the derivations, traces and named elements that usually
/// come with it.
struct StandardAlgebra {
  AlgebraPtr algebra;
  std::vector<SuperDerivation> derivations;
  std::vector<Functional> traces;
  std::map<std::string, AlgebraElement> elements;

  const SuperDerivation& derivation(const std::string& name) const;
  const Functional& trace(const std::string& name) const;
  const AlgebraElement& element(const std::string& name) const;
};

/// (U^a V^b)(U^c V^d) = lambda^{-bc} U^{a+c} V^{b+d} with lambda = e^{2 pi i theta},
/// so UV = lambda VU. Keys are (a, b). Always the approximate backend.
class QuantumTorus final : public SuperAlgebra {
 public:
  explicit QuantumTorus(double theta);

  std::string kind() const override { return "quantum_torus"; }
  Backend backend() const override { return Backend::Approx; }
  bool is_finite() const override { return false; }
  bool contains(const BasisKey&) const override { return true; }
  int parity(const BasisKey&) const override { return 0; }
  Coeffs unit() const override;
  Coeffs multiply_basis(const BasisKey& x, const BasisKey& y) const override;
  std::string name(const BasisKey& k) const override;
  /// Uses the parallel dense kernel.
  Coeffs multiply(const Coeffs& x, const Coeffs& y) const override;

  double theta() const { return theta_; }
  /// lambda^k
  std::complex<double> phase(long k) const;

 private:
  double theta_;
};

/// Laurent polynomials in z over Q(i); keys (n, 0) for z^n.
class LaurentCircle final : public SuperAlgebra {
 public:
  std::string kind() const override { return "circle_laurent"; }
  Backend backend() const override { return Backend::Gaussian; }
  bool is_finite() const override { return false; }
  bool contains(const BasisKey& k) const override { return k.b == 0; }
  int parity(const BasisKey&) const override { return 0; }
  Coeffs unit() const override;
  Coeffs multiply_basis(const BasisKey& x, const BasisKey& y) const override;
  std::string name(const BasisKey& k) const override;
};

/// M_n with matrix units "E{i}{j}" (1-based) and the trace "tr".
StandardAlgebra matrix_algebra(int n, Backend backend = Backend::Rational);

/// End(k^{n0|n1}): E_ij has parity deg(i)+deg(j). Equipment: supertrace "str";
/// for n0 == n1 the odd involution "F" swapping the two halves and the odd
/// derivation "d" = [F, -].
StandardAlgebra graded_endomorphisms(int n0, int n1, Backend backend = Backend::Rational);

/// Equipment: derivations "X" (U -> 2 pi i U) and "Y" (V -> 2 pi i V), trace "tau"
/// taking the (0,0) coefficient, elements "U", "V".
StandardAlgebra quantum_torus(double theta);

/// Equipment: derivation "X" with X(z^n) = i n z^n and a symbolic factor 2 pi,
/// trace "tau" taking the constant term, element "z".
StandardAlgebra circle_laurent();

/// Q[x]/x^n with basis "1", "x", "x^2", ...; derivations "x d/dx" and "x^2 d/dx",
/// every coordinate functional "c0", "c1", ...
StandardAlgebra truncated_polynomial(int n, Backend backend = Backend::Rational);

StandardAlgebra ground_field(Backend backend = Backend::Rational);

/// Exterior algebra on k odd generators xi1..xik, basis indexed by bitmask.
/// Derivations: Euler "E" and, for k >= 3, the odd "Q" = xi1 xi2 d/dxi3.
/// Functionals: the coordinate of each monomial, named after it.
StandardAlgebra grassmann(int k, Backend backend = Backend::Rational);

/// Q[x]/x^3 tensor Lambda[xi], basis x^k xi^e at index 2k+e. Derivations: odd
/// "Q" with Q(x) = xi x, Q(xi) = x, and even "P" = Q^2.
StandardAlgebra super_truncated(Backend backend = Backend::Rational);

struct StandardParams {
  int n = 0;
  int n0 = 0;
  int n1 = 0;
  double theta = 0.0;
  Backend backend = Backend::Rational;
};

/// Dispatch by kind name: matrix, graded_endomorphisms, quantum_torus,
/// circle_laurent, truncated_polynomial, ground_field, grassmann, super_truncated.
StandardAlgebra build_standard_algebra(const std::string& kind, const StandardParams& params);

}  // namespace lrcyc
