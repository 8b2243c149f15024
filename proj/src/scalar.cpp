#include "lrcyc/scalar.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace lrcyc {

namespace {

int rank_of(Backend b) { return static_cast<int>(b); }

[[noreturn]] void mismatch(Backend a, Backend b) {
  throw BackendMismatch("scalar backends differ: " + std::string(backend_name(a)) + " vs " +
                        std::string(backend_name(b)));
}

std::string trim(std::string_view s) {
  std::size_t a = 0, e = s.size();
  while (a < e && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (e > a && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(a, e - a));
}

bool is_decimal(const std::string& s) {
  return s.find_first_of(".eE") != std::string::npos;
}

mpq_class parse_rational(const std::string& raw) {
  std::string s = raw;
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  if (s.empty()) throw ParseError("empty rational literal");
  for (char c : s) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-'))
      throw ParseError("bad rational literal '" + raw + "'");
  }
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw ParseError("bad rational literal '" + raw + "'");
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + raw + "'");
  q.canonicalize();
  return q;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ParseError("bad decimal literal '" + s + "'");
  }
  if (used != s.size()) throw ParseError("bad decimal literal '" + s + "'");
  return v;
}

// Splits "re+im i" into (re, im) texts; either may be empty.
std::pair<std::string, std::string> split_complex(const std::string& s) {
  std::string body = trim(std::string_view(s).substr(0, s.size() - 1));  // drop trailing i
  std::size_t cut = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      cut = k;
      break;
    }
  }
  if (cut == std::string::npos) return {"", trim(body)};
  return {trim(std::string_view(body).substr(0, cut)), trim(std::string_view(body).substr(cut))};
}

std::string normalize_imag(const std::string& t) {
  if (t.empty() || t == "+") return "1";
  if (t == "-") return "-1";
  return t;
}

}  // namespace

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::Rational: return "rational";
    case Backend::Gaussian: return "gaussian";
    case Backend::Approx: return "approx";
  }
  return "?";
}

Backend parse_backend(std::string_view name) {
  if (name == "rational") return Backend::Rational;
  if (name == "gaussian") return Backend::Gaussian;
  if (name == "approx") return Backend::Approx;
  throw ParseError("unknown backend '" + std::string(name) + "'");
}

Backend join(Backend a, Backend b) { return rank_of(a) >= rank_of(b) ? a : b; }

Scalar::Scalar(GaussianRational g) : v_(std::move(g)) {}

Scalar Scalar::zero(Backend b) { return from_int(0, b); }
Scalar Scalar::one(Backend b) { return from_int(1, b); }

Scalar Scalar::from_int(long n, Backend b) { return from_ratio(n, 1, b); }

Scalar Scalar::from_ratio(long num, long den, Backend b) {
  mpq_class q(num, den);
  q.canonicalize();
  switch (b) {
    case Backend::Rational: return Scalar(q);
    case Backend::Gaussian: return Scalar(GaussianRational{q, 0});
    case Backend::Approx: return Scalar(std::complex<double>(q.get_d(), 0.0));
  }
  return Scalar();
}

Scalar Scalar::imaginary_unit(Backend b) {
  switch (b) {
    case Backend::Rational: throw BackendMismatch("i is not a rational number");
    case Backend::Gaussian: return Scalar(GaussianRational{0, 1});
    case Backend::Approx: return Scalar(std::complex<double>(0.0, 1.0));
  }
  return Scalar();
}

Backend Scalar::backend() const { return static_cast<Backend>(v_.index()); }

bool Scalar::is_zero() const {
  switch (v_.index()) {
    case 0: return sgn(std::get<0>(v_)) == 0;
    case 1: {
      const auto& g = std::get<1>(v_);
      return sgn(g.re) == 0 && sgn(g.im) == 0;
    }
    default: return std::get<2>(v_) == std::complex<double>(0.0, 0.0);
  }
}

bool Scalar::is_real() const {
  switch (v_.index()) {
    case 0: return true;
    case 1: return sgn(std::get<1>(v_).im) == 0;
    default: return std::get<2>(v_).imag() == 0.0;
  }
}

double Scalar::magnitude() const { return std::abs(to_complex()); }

std::complex<double> Scalar::to_complex() const {
  switch (v_.index()) {
    case 0: return {std::get<0>(v_).get_d(), 0.0};
    case 1: return {std::get<1>(v_).re.get_d(), std::get<1>(v_).im.get_d()};
    default: return std::get<2>(v_);
  }
}

Scalar Scalar::promote(Backend target) const {
  Backend b = backend();
  if (b == target) return *this;
  if (rank_of(target) < rank_of(b)) {
    throw BackendMismatch("cannot demote " + std::string(backend_name(b)) + " scalar to " +
                          std::string(backend_name(target)));
  }
  if (target == Backend::Gaussian) return Scalar(GaussianRational{std::get<0>(v_), 0});
  return Scalar(to_complex());
}

Scalar Scalar::conj() const {
  switch (v_.index()) {
    case 0: return *this;
    case 1: {
      const auto& g = std::get<1>(v_);
      return Scalar(GaussianRational{g.re, -g.im});
    }
    default: return Scalar(std::conj(std::get<2>(v_)));
  }
}

Scalar Scalar::operator-() const {
  switch (v_.index()) {
    case 0: return Scalar(mpq_class(-std::get<0>(v_)));
    case 1: {
      const auto& g = std::get<1>(v_);
      return Scalar(GaussianRational{-g.re, -g.im});
    }
    default: return Scalar(-std::get<2>(v_));
  }
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (v_.index() != o.v_.index()) mismatch(backend(), o.backend());
  switch (v_.index()) {
    case 0: std::get<0>(v_) += std::get<0>(o.v_); break;
    case 1:
      std::get<1>(v_).re += std::get<1>(o.v_).re;
      std::get<1>(v_).im += std::get<1>(o.v_).im;
      break;
    default: std::get<2>(v_) += std::get<2>(o.v_);
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (v_.index() != o.v_.index()) mismatch(backend(), o.backend());
  switch (v_.index()) {
    case 0: std::get<0>(v_) -= std::get<0>(o.v_); break;
    case 1:
      std::get<1>(v_).re -= std::get<1>(o.v_).re;
      std::get<1>(v_).im -= std::get<1>(o.v_).im;
      break;
    default: std::get<2>(v_) -= std::get<2>(o.v_);
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (v_.index() != o.v_.index()) mismatch(backend(), o.backend());
  switch (v_.index()) {
    case 0: std::get<0>(v_) *= std::get<0>(o.v_); break;
    case 1: {
      auto& a = std::get<1>(v_);
      const auto& b = std::get<1>(o.v_);
      mpq_class re = a.re * b.re - a.im * b.im;
      mpq_class im = a.re * b.im + a.im * b.re;
      a.re = std::move(re);
      a.im = std::move(im);
      break;
    }
    default: std::get<2>(v_) *= std::get<2>(o.v_);
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (v_.index() != o.v_.index()) mismatch(backend(), o.backend());
  if (o.is_zero()) throw ComputationError("division by zero scalar");
  switch (v_.index()) {
    case 0: std::get<0>(v_) /= std::get<0>(o.v_); break;
    case 1: {
      auto& a = std::get<1>(v_);
      const auto& b = std::get<1>(o.v_);
      mpq_class den = b.re * b.re + b.im * b.im;
      mpq_class re = (a.re * b.re + a.im * b.im) / den;
      mpq_class im = (a.im * b.re - a.re * b.im) / den;
      a.re = std::move(re);
      a.im = std::move(im);
      break;
    }
    default: std::get<2>(v_) /= std::get<2>(o.v_);
  }
  return *this;
}

Scalar& Scalar::operator*=(long n) {
  switch (v_.index()) {
    case 0: std::get<0>(v_) *= n; break;
    case 1:
      std::get<1>(v_).re *= n;
      std::get<1>(v_).im *= n;
      break;
    default: std::get<2>(v_) *= static_cast<double>(n);
  }
  return *this;
}

bool Scalar::operator==(const Scalar& o) const {
  if (v_.index() != o.v_.index()) mismatch(backend(), o.backend());
  switch (v_.index()) {
    case 0: return std::get<0>(v_) == std::get<0>(o.v_);
    case 1:
      return std::get<1>(v_).re == std::get<1>(o.v_).re &&
             std::get<1>(v_).im == std::get<1>(o.v_).im;
    default: return std::get<2>(v_) == std::get<2>(o.v_);
  }
}

bool Scalar::is_close(const Scalar& o, double tol) const {
  if (v_.index() != o.v_.index()) mismatch(backend(), o.backend());
  if (backend() != Backend::Approx) return *this == o;
  return std::abs(std::get<2>(v_) - std::get<2>(o.v_)) <= tol;
}

mpq_class Scalar::real_part() const {
  switch (v_.index()) {
    case 0: return std::get<0>(v_);
    case 1: return std::get<1>(v_).re;
    default: throw BackendMismatch("real_part() needs an exact backend");
  }
}

mpq_class Scalar::imag_part() const {
  switch (v_.index()) {
    case 0: return 0;
    case 1: return std::get<1>(v_).im;
    default: throw BackendMismatch("imag_part() needs an exact backend");
  }
}

std::string Scalar::to_string() const {
  switch (v_.index()) {
    case 0: return std::get<0>(v_).get_str();
    case 1: {
      const auto& g = std::get<1>(v_);
      if (sgn(g.im) == 0) return g.re.get_str();
      std::string im = abs(g.im) == 1 ? "" : mpq_class(abs(g.im)).get_str();
      std::string sign = sgn(g.im) < 0 ? "-" : "+";
      if (sgn(g.re) == 0) return (sgn(g.im) < 0 ? "-" : "") + im + (im.empty() ? "i" : " i");
      return g.re.get_str() + sign + im + (im.empty() ? "i" : " i");
    }
    default: {
      const auto z = std::get<2>(v_);
      std::ostringstream os;
      os.precision(17);
      os << z.real();
      if (z.imag() != 0.0) os << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << " i";
      return os.str();
    }
  }
}

Backend infer_backend(std::string_view text) {
  return parse_scalar(text).backend();
}

Scalar parse_scalar(std::string_view text, std::optional<Backend> target) {
  std::string s = trim(text);
  if (s.empty()) throw ParseError("empty scalar literal");
  Scalar out;
  if (s.back() == 'i') {
    auto [re_txt, im_txt] = split_complex(s);
    im_txt = normalize_imag(im_txt);
    if (is_decimal(re_txt) || is_decimal(im_txt)) {
      double re = re_txt.empty() ? 0.0 : parse_double(re_txt);
      double im = parse_double(im_txt);
      out = Scalar(std::complex<double>(re, im));
    } else {
      mpq_class re = re_txt.empty() ? mpq_class(0) : parse_rational(re_txt);
      out = Scalar(GaussianRational{re, parse_rational(im_txt)});
    }
  } else if (is_decimal(s)) {
    out = Scalar(std::complex<double>(parse_double(s), 0.0));
  } else {
    out = Scalar(parse_rational(s));
  }
  return target ? out.promote(*target) : out;
}

}  // namespace lrcyc
