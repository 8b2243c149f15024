#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

#include "lrcyc/errors.hpp"

namespace lrcyc {

enum class Backend { Rational, Gaussian, Approx };

std::string_view backend_name(Backend b);
Backend parse_backend(std::string_view name);

/// Exact element of Q(i).
struct GaussianRational {
  mpq_class re;
  mpq_class im;
};

/// A coefficient in one of three fields: Q, Q(i) or binary64 complex.
///
/// Arithmetic between different backends throws BackendMismatch; the only
/// way to change backend is an explicit promote(). Approximate values carry
/// no tolerance of their own; callers pass one where a zero test matters.
class Scalar {
 public:
  Scalar() = default;  // rational zero
  explicit Scalar(mpq_class q) : v_(std::move(q)) {}
  explicit Scalar(GaussianRational g);
  explicit Scalar(std::complex<double> z) : v_(z) {}

  static Scalar zero(Backend b);
  static Scalar one(Backend b);
  static Scalar from_int(long n, Backend b);
  static Scalar from_ratio(long num, long den, Backend b);
  /// i in the Gaussian or approximate backend.
  static Scalar imaginary_unit(Backend b);

  Backend backend() const;
  bool is_zero() const;
  bool is_real() const;
  double magnitude() const;
  std::complex<double> to_complex() const;

  /// Rational -> Gaussian -> Approx; demotion is not allowed.
  Scalar promote(Backend target) const;

  Scalar conj() const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  Scalar& operator*=(long n);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend Scalar operator*(Scalar a, long n) { return a *= n; }
  friend Scalar operator*(long n, Scalar a) { return a *= n; }

  /// Exact equality; approximate values compare bitwise. Backends must agree.
  bool operator==(const Scalar& o) const;
  bool is_close(const Scalar& o, double tol) const;

  /// Rational part accessors for exact backends.
  mpq_class real_part() const;
  mpq_class imag_part() const;

  std::string to_string() const;

 private:
  std::variant<mpq_class, GaussianRational, std::complex<double>> v_;
};

/// Parses the scalar-string grammar used by the JSON inputs:
/// "a/b" or "a" (rational), "a/b+c/d i" or "c/d i" (Gaussian), decimal
/// literals (approximate, optionally with an imaginary part "x+y i").
/// With `target` set the result is promoted to that backend.
Scalar parse_scalar(std::string_view text, std::optional<Backend> target = std::nullopt);

/// Backend implied by a scalar string without promoting it.
Backend infer_backend(std::string_view text);

/// The larger of two backends in the promotion order.
Backend join(Backend a, Backend b);

}  // namespace lrcyc
