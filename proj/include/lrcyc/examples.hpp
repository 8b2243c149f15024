#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lrcyc/pairing.hpp"
#include "lrcyc/report.hpp"
#include "lrcyc/standard_algebras.hpp"

namespace lrcyc {

/// Finite graded Hilbert space k^{n0|n1} with an odd involution F and an even
/// idempotent e, all over Q(i). Rows/columns 0..n0-1 are the even half.
struct FredholmModel {
  std::string name;
  int n0 = 1;
  int n1 = 1;
  std::vector<Vector> F;
  std::vector<Vector> e;
  int p = 2;
};

/// F swapping the two halves (needs n0 == n1), e given by `e`.
FredholmModel fredholm_model(std::string name, int n, std::vector<Vector> e, int p = 2);
/// Block-diagonal e with diagonal entries 0/1.
FredholmModel fredholm_diagonal(std::string name, int n, const std::vector<int>& diag, int p = 2);
/// Models with indices 1, -1, 2, 1 (the last one not diagonal), then e = 0 and e = 1.
std::vector<FredholmModel> standard_fredholm_models();
/// Throws PreconditionError unless F^2 = 1, F odd and self-adjoint, e^2 = e,
/// e even and self-adjoint, p even and positive.
void validate(const FredholmModel& m);

struct FredholmResult {
  /// str (x) d^p paired with e^{(p+1)}.
  PairingValue pairing;
  /// dim ker - dim coker of e11 F e00 : e00 H0 -> e11 H1.
  long index = 0;
  /// pairing / index when the index is nonzero.
  std::optional<Scalar> ratio;
  bool ker_B_verified = false;
  bool commutator_vanishes = false;
};

FredholmResult fredholm_pairing(const FredholmModel& m);
Report demo_fredholm(const FredholmModel& m);

enum class Ramp { Smoothstep, Bump };

const char* ramp_name(Ramp r);
Ramp parse_ramp(std::string_view s);

struct RieffelSpec {
  double theta = 0.3;
  double delta = 0.1;
  Ramp ramp = Ramp::Bump;
  int truncation = 128;
  /// 0 means 8 * truncation.
  int quadrature_points = 0;

  int points() const { return quadrature_points > 0 ? quadrature_points : 8 * truncation; }
};

void validate(const RieffelSpec& s);

/// Ramp r on [0, delta] with r(0) = 0, r(delta) = 1, and the profiles f, g.
double ramp_value(Ramp r, double x, double delta);
double rieffel_f(const RieffelSpec& s, double t);
double rieffel_g(const RieffelSpec& s, double t);

struct RieffelProjection {
  AlgebraElement e;
  /// max |(e^2 - e)_{mn}|
  double idempotency_residual = 0.0;
  /// max |(e* - e)_{mn}|
  double adjoint_residual = 0.0;
  double trace = 0.0;
};

/// e = g(U) V + f(U) + V^* g(U) in `torus` (a quantum_torus with the spec's
/// theta), Fourier coefficients of f, g by the trapezoid rule.
RieffelProjection rieffel_projection(const RieffelSpec& s, const StandardAlgebra& torus);
/// Involution on the quantum torus: (U^m V^n)^* = V^{-n} U^{-m}.
AlgebraElement torus_adjoint(const AlgebraElement& a);

/// Orientation of the torus Chern number: with P2 = chern * 2 pi i the
/// recovered q is kTorusOrientation * chern, and P0 = p - q theta.
inline constexpr int kTorusOrientation = 1;

struct TorusResult {
  std::complex<double> p0;
  std::complex<double> p2;
  std::complex<double> chern;
  long p_hat = 0;
  long q_hat = 0;
};

/// Pairings [tau].[e] and [tau (x) X ^ Y].[e (x) e (x) e] for the given element.
TorusResult torus_pairings(const StandardAlgebra& torus, const AlgebraElement& e);
Report demo_nctorus(const RieffelSpec& s);

/// Winding number pairing: w(n) = pair(tau (x) X, z^{-n} (x) z^n) / (i * kCircleScale),
/// where the pairing carries one symbolic factor 2 pi.
inline constexpr long kCircleScale = 1;

struct CircleResult {
  PairingValue pairing;
  Scalar winding;
};

CircleResult circle_winding(long n);
Report demo_circle(long n);

/// tau_k (x) X_1 ^ ... ^ X_p after checking that it is an LR cycle (for
/// abelian even L and an invariant tau it always is). Throws
/// PreconditionError otherwise.
LRChain invariant_trace_cycle(const PairingContext& ctx, std::size_t trace_index,
                              const std::vector<std::string>& word);

}  // namespace lrcyc
