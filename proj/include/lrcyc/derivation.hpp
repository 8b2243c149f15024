#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "lrcyc/algebra.hpp"

namespace lrcyc {

/// Homogeneous super-derivation given by its values on basis elements.
///
/// `two_pi_power` is a symbolic factor: the true action is
/// (2*pi)^two_pi_power times the stored rule. The circle derivation uses it
/// so that winding numbers stay exact; the approximate torus derivations
/// fold 2*pi into their coefficients and keep the power at 0.
class SuperDerivation {
 public:
  using Rule = std::function<Coeffs(const BasisKey&)>;

  SuperDerivation(std::string name, int parity, AlgebraPtr alg, Rule rule, int two_pi_power = 0);

  /// Values on basis keys; missing keys map to zero. Finite algebras only.
  static SuperDerivation from_table(std::string name, int parity, AlgebraPtr alg,
                                    std::map<BasisKey, Coeffs> table);
  /// ad(z) = [z, -] for a homogeneous z.
  static SuperDerivation inner(std::string name, const AlgebraElement& z);

  const std::string& name() const { return name_; }
  int parity() const { return parity_; }
  int two_pi_power() const { return two_pi_power_; }
  const SuperAlgebra& algebra() const { return *alg_; }
  const AlgebraPtr& algebra_ptr() const { return alg_; }

  Coeffs on_basis(const BasisKey& k) const { return rule_(k); }
  Coeffs apply(const Coeffs& c) const;

 private:
  std::string name_;
  int parity_;
  AlgebraPtr alg_;
  Rule rule_;
  int two_pi_power_;
};

AlgebraElement apply_derivation(const SuperDerivation& d, const AlgebraElement& a);

/// max |D(xy) - D(x)y - (-1)^{|D||x|} x D(y)| over the samples; x must be
/// homogeneous. Also includes |D(1)|.
double check_leibniz(const SuperDerivation& d,
                     const std::vector<std::pair<AlgebraElement, AlgebraElement>>& samples);

/// Basis pairs of a finite algebra, for exhaustive Leibniz checks.
std::vector<std::pair<AlgebraElement, AlgebraElement>> all_basis_pairs(const AlgebraPtr& alg);

}  // namespace lrcyc
