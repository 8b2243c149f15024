#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lrcyc/hochschild.hpp"
#include "lrcyc/lie_rinehart.hpp"

namespace lrcyc {

/// Frozen signs in the chain identities
///   <c, (1-t) a> = kLemma2Sign <d c, rotate_and_multiply(a)>
///   <c, B a>     = kStokesSign p <d c, a>
/// Both hold for either B variant.
inline constexpr int kLemma2Sign = 1;
inline constexpr int kStokesSign = -1;

/// coefficient * (2 pi)^two_pi_power
struct PairingValue {
  Scalar coefficient;
  int two_pi_power = 0;

  std::complex<double> numeric() const;
  bool is_zero() const { return coefficient.is_zero(); }
  std::string to_string() const;
};

/// The data A -> B, J, the action of (L, R) on B and the trace module on J^p.
struct PairingContext {
  AlgebraPtr source;
  AlgebraPtr target;
  /// phi on basis keys of A.
  std::function<Coeffs(const BasisKey&)> phi;
  IdealPtr j;
  IdealPtr jp;
  LRPtr lr;
  int p = 0;
  TraceModule traces;
  /// Keys of A used for random Hochschild entries, and the subset mapped into J.
  std::vector<BasisKey> sample_keys;
  std::vector<BasisKey> j_keys;
};

/// A = B with phi = id and J generated by `j_generators` (empty: J = B).
/// Finite B only; traces are the full partial-trace space on J^p.
PairingContext inner_context(const AlgebraPtr& b_alg, const LRPtr& lr,
                             const std::vector<AlgebraElement>& j_generators, int p);

/// General A -> B given on basis keys of a finite A.
PairingContext mapped_context(const AlgebraPtr& a_alg, const AlgebraPtr& b_alg,
                              std::map<BasisKey, Coeffs> phi, const LRPtr& lr,
                              const std::vector<AlgebraElement>& j_generators, int p);

/// Countable B with J = B, A = B, and an explicit list of functionals whose
/// module structure is read off `samples`.
PairingContext sampled_context(const AlgebraPtr& b_alg, const LRPtr& lr, int p,
                               const std::vector<PartialTrace>& traces,
                               const std::vector<BasisKey>& samples);

/// Replaces the trace module by the span of the given functionals (used for
/// negative controls; no vanishing on supercommutators is required).
PairingContext with_functionals(PairingContext ctx, const std::vector<PartialTrace>& functionals);

struct AdmissibilityCheck {
  std::string name;
  double residual = 0.0;
  bool pass = true;
};

/// phi multiplicative and unital, X(phi(a)) in J, traces vanish on [B, J^p],
/// the L action is a Lie homomorphism. Never throws on failed checks.
std::vector<AdmissibilityCheck> check_admissible(const PairingContext& ctx);

/// sum over sigma of sgn(sigma) * koszul * tau(phi(a_0) X_s1(phi(a_1)) ... X_sp(phi(a_p))),
/// where koszul is the sign of reordering the symbols tau X_1..X_p a_0..a_p
/// into tau a_0 X_s1 a_1 ... X_sp a_p. The argument of each tau must lie in
/// span(J^p) (OutsideIdeal otherwise).
PairingValue pair(const PairingContext& ctx, const LRChain& tau_chain, const HochschildChain& hoch);

/// pair() on a_0 (x) ... (x) a_p for homogeneous elements of A, without
/// expanding the tensor product into basis tuples.
PairingValue pair_elements(const PairingContext& ctx, const LRChain& tau_chain,
                           const std::vector<AlgebraElement>& factors);

/// <tau_chain, b c> for c of degree p + 1.
PairingValue residual_lemma1(const PairingContext& ctx, const LRChain& tau_chain, const HochschildChain& c);
/// <tau_chain, (1-t) c> - kLemma2Sign <d tau_chain, rotate_and_multiply(c)>.
PairingValue residual_lemma2(const PairingContext& ctx, const LRChain& tau_chain, const HochschildChain& c,
                             int sign = kLemma2Sign);
/// <tau_chain, B c> - kStokesSign p <d tau_chain, c> for c of degree p - 1.
PairingValue residual_stokes(const PairingContext& ctx, const LRChain& tau_chain, const HochschildChain& c,
                             BVariant variant = BVariant::Full, int sign = kStokesSign);

struct ClassPairing {
  PairingValue value;
  /// Whether B(hc_rep) was checked to be a Hochschild boundary.
  bool ker_B_verified = false;
};

/// Pairing of an LR cycle with a cyclic cycle whose class B kills. Throws
/// PreconditionError when either side fails its cycle condition or B(hc_rep)
/// is shown not to be a boundary.
ClassPairing pair_classes(const PairingContext& ctx, const LRChain& lr_cycle, const HochschildChain& hc_rep);

/// tau_k (x) X_1 ^ ... ^ X_p as a chain over the context's trace module.
LRChain trace_chain(const PairingContext& ctx, std::size_t trace_index, const std::vector<std::string>& word,
                    int degree);

struct LemmaSweep {
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  BVariant variant = BVariant::Full;
  double lemma1_max = 0.0;
  double lemma2_max = 0.0;
  double stokes_max = 0.0;
  /// Exact backends: every residual was exactly zero.
  bool lemma1_exact = true;
  bool lemma2_exact = true;
  bool stokes_exact = true;
};

/// Random (tau_chain, c) for all three identities; sample i uses
/// sample_rng(seed, i). `parallel` selects the OpenMP sweep.
LemmaSweep lemma_sweep(const PairingContext& ctx, std::size_t samples, std::uint64_t seed,
                       BVariant variant = BVariant::Full, bool parallel = true);

}  // namespace lrcyc
