#include <cmath>
#include <numbers>
#include <sstream>

#include "lrcyc/kernels.hpp"
#include "lrcyc/standard_algebras.hpp"

namespace lrcyc {

namespace {

std::string power_name(const char* sym, long k) {
  if (k == 0) return "";
  if (k == 1) return sym;
  return std::string(sym) + "^" + std::to_string(k);
}

}  // namespace

QuantumTorus::QuantumTorus(double theta) : theta_(theta) {
  if (!(theta > 0.0 && theta < 1.0)) throw PreconditionError("theta must lie in (0, 1)");
}

std::complex<double> QuantumTorus::phase(long k) const {
  // Reduce k*theta mod 1 before scaling by 2 pi to keep the angle small.
  double frac = std::fmod(static_cast<double>(k) * theta_, 1.0);
  return std::polar(1.0, 2.0 * std::numbers::pi * frac);
}

Coeffs QuantumTorus::unit() const { return Coeffs{{BasisKey{0, 0}, Scalar::one(Backend::Approx)}}; }

Coeffs QuantumTorus::multiply_basis(const BasisKey& x, const BasisKey& y) const {
  long e = -static_cast<long>(x.b) * static_cast<long>(y.a);
  std::complex<double> ph = e == 0 ? std::complex<double>(1.0, 0.0) : phase(e);
  return Coeffs{{BasisKey{x.a + y.a, x.b + y.b}, Scalar(ph)}};
}

std::string QuantumTorus::name(const BasisKey& k) const {
  if (k.a == 0 && k.b == 0) return "1";
  return power_name("U", k.a) + power_name("V", k.b);
}

Coeffs QuantumTorus::multiply(const Coeffs& x, const Coeffs& y) const {
  return kernels::torus_product_parallel(*this, x, y);
}

Coeffs LaurentCircle::unit() const { return Coeffs{{BasisKey{0, 0}, Scalar::one(Backend::Gaussian)}}; }

Coeffs LaurentCircle::multiply_basis(const BasisKey& x, const BasisKey& y) const {
  return Coeffs{{BasisKey{x.a + y.a, 0}, Scalar::one(Backend::Gaussian)}};
}

std::string LaurentCircle::name(const BasisKey& k) const {
  if (k.a == 0) return "1";
  return power_name("z", k.a);
}

namespace kernels {

Coeffs torus_product_serial(const QuantumTorus& alg, const Coeffs& x, const Coeffs& y) {
  return alg.SuperAlgebra::multiply(x, y);
}

Coeffs torus_product_parallel(const QuantumTorus& alg, const Coeffs& x, const Coeffs& y) {
  if (x.empty() || y.empty()) return {};
  auto box = [](const Coeffs& c) {
    int a0 = c.begin()->first.a, a1 = c.rbegin()->first.a;
    int b0 = c.begin()->first.b, b1 = b0;
    for (const auto& e : c) {
      b0 = std::min(b0, e.first.b);
      b1 = std::max(b1, e.first.b);
    }
    return std::array<int, 4>{a0, a1, b0, b1};
  };
  const auto [xa0, xa1, xb0, xb1] = box(x);
  const auto [ya0, ya1, yb0, yb1] = box(y);
  const long xw = xa1 - xa0 + 1, xh = xb1 - xb0 + 1;
  const long yw = ya1 - ya0 + 1, yh = yb1 - yb0 + 1;
  const auto sparse = [](long area, std::size_t nnz) { return area > 4 * static_cast<long>(nnz) + 64; };
  if (sparse(xw * xh, x.size()) || sparse(yw * yh, y.size())) return torus_product_serial(alg, x, y);

  using C = std::complex<double>;
  std::vector<C> X(xw * xh), Y(yw * yh);
  for (const auto& [k, v] : x) X[(k.a - xa0) * xh + (k.b - xb0)] = v.to_complex();
  for (const auto& [k, v] : y) Y[(k.a - ya0) * yh + (k.b - yb0)] = v.to_complex();
  // phase[b][c] = lambda^{-bc}
  std::vector<C> ph(xh * yw);
  for (long b = 0; b < xh; ++b)
    for (long c = 0; c < yw; ++c) {
      long e = -(b + xb0) * (c + ya0);
      ph[b * yw + c] = e == 0 ? C(1.0, 0.0) : alg.phase(e);
    }

  const long ow = xw + yw - 1, oh = xh + yh - 1;
  std::vector<C> out(ow * oh);
#pragma omp parallel for schedule(static)
  for (long m = 0; m < ow; ++m) {
    C* row = &out[m * oh];
    const long a_lo = std::max(0L, m - (yw - 1)), a_hi = std::min(xw - 1, m);
    for (long a = a_lo; a <= a_hi; ++a) {
      const long c = m - a;
      for (long b = 0; b < xh; ++b) {
        const C xv = X[a * xh + b];
        if (xv == C(0.0, 0.0)) continue;
        const C f = xv * ph[b * yw + c];
        const C* yrow = &Y[c * yh];
        for (long d = 0; d < yh; ++d) row[b + d] += f * yrow[d];
      }
    }
  }

  Coeffs result;
  for (long m = 0; m < ow; ++m)
    for (long n = 0; n < oh; ++n) {
      const C v = out[m * oh + n];
      if (v != C(0.0, 0.0))
        result.emplace_hint(result.end(), BasisKey{static_cast<int>(m + xa0 + ya0), static_cast<int>(n + xb0 + yb0)},
                            Scalar(v));
    }
  return result;
}

}  // namespace kernels
}  // namespace lrcyc
