#include "lrcyc/standard_algebras.hpp"

#include <bit>
#include <numbers>

namespace lrcyc {

PartialTrace make_partial_trace(const Functional& f, const IdealPtr& domain) {
  const SuperAlgebra& alg = domain->algebra();
  if (!alg.is_finite()) return PartialTrace(f.name, f.parity, domain, f.rule);
  Coeffs values;
  for (const auto& k : alg.basis()) {
    Scalar s = f.rule(k);
    if (!s.is_zero()) values.emplace(k, std::move(s));
  }
  PartialTrace t = restrict_functional(f.name, domain, values);
  if (t.parity() != f.parity && !values.empty())
    throw PreconditionError(f.name + ": declared parity does not match its values");
  return t;
}

const SuperDerivation& StandardAlgebra::derivation(const std::string& name) const {
  for (const auto& d : derivations)
    if (d.name() == name) return d;
  throw PreconditionError("no derivation named " + name);
}

const Functional& StandardAlgebra::trace(const std::string& name) const {
  for (const auto& t : traces)
    if (t.name == name) return t;
  throw PreconditionError("no functional named " + name);
}

const AlgebraElement& StandardAlgebra::element(const std::string& name) const {
  auto it = elements.find(name);
  if (it == elements.end()) throw PreconditionError("no element named " + name);
  return it->second;
}

namespace {

Functional table_functional(std::string name, int parity, Coeffs values, Backend b) {
  return Functional{std::move(name), parity, [values, b](const BasisKey& k) {
                      auto it = values.find(k);
                      return it == values.end() ? Scalar::zero(b) : it->second;
                    }};
}

// Matrix units over a graded index set; deg[i] is the parity of row/column i.
StandardAlgebra matrix_units(const std::string& kind, const std::vector<int>& deg, Backend backend) {
  const int n = static_cast<int>(deg.size());
  std::vector<TableAlgebra::BasisElement> basis;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      basis.push_back({"E" + std::to_string(i + 1) + std::to_string(j + 1), (deg[i] + deg[j]) % 2});
  auto key = [n](int i, int j) { return BasisKey{i * n + j, 0}; };
  const Scalar one = Scalar::one(backend);
  std::vector<Coeffs> table(static_cast<std::size_t>(n) * n * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l)
        table[static_cast<std::size_t>(i * n + j) * n * n + j * n + l] = Coeffs{{key(i, l), one}};
  Coeffs unit;
  for (int i = 0; i < n; ++i) unit.emplace(key(i, i), one);
  StandardAlgebra out;
  out.algebra = TableAlgebra::create(kind, std::move(basis), std::move(unit), std::move(table), backend);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out.elements.emplace(out.algebra->name(key(i, j)), AlgebraElement::basis(out.algebra, key(i, j)));
  return out;
}

}  // namespace

StandardAlgebra matrix_algebra(int n, Backend backend) {
  if (n < 1) throw PreconditionError("matrix size must be positive");
  StandardAlgebra out = matrix_units("matrix", std::vector<int>(n, 0), backend);
  Coeffs tr;
  for (int i = 0; i < n; ++i) tr.emplace(BasisKey{i * n + i, 0}, Scalar::one(backend));
  out.traces.push_back(table_functional("tr", 0, tr, backend));
  return out;
}

StandardAlgebra graded_endomorphisms(int n0, int n1, Backend backend) {
  if (n0 < 0 || n1 < 0 || n0 + n1 == 0) throw PreconditionError("graded dimensions must be positive");
  std::vector<int> deg(n0, 0);
  deg.resize(n0 + n1, 1);
  StandardAlgebra out = matrix_units("graded_endomorphisms", deg, backend);
  const int n = n0 + n1;
  Coeffs str;
  for (int i = 0; i < n; ++i)
    str.emplace(BasisKey{i * n + i, 0}, i < n0 ? Scalar::one(backend) : -Scalar::one(backend));
  out.traces.push_back(table_functional("str", 0, str, backend));
  if (n0 == n1) {
    Coeffs f;
    for (int i = 0; i < n0; ++i) {
      f.emplace(BasisKey{i * n + n0 + i, 0}, Scalar::one(backend));
      f.emplace(BasisKey{(n0 + i) * n + i, 0}, Scalar::one(backend));
    }
    AlgebraElement F(out.algebra, f);
    out.derivations.push_back(SuperDerivation::inner("d", F));
    out.elements.emplace("F", F);
  }
  return out;
}

StandardAlgebra quantum_torus(double theta) {
  auto alg = std::make_shared<const QuantumTorus>(theta);
  StandardAlgebra out;
  out.algebra = alg;
  const std::complex<double> two_pi_i(0.0, 2.0 * std::numbers::pi);
  out.derivations.emplace_back("X", 0, alg, [two_pi_i](const BasisKey& k) {
    if (k.a == 0) return Coeffs{};
    return Coeffs{{k, Scalar(two_pi_i * static_cast<double>(k.a))}};
  });
  out.derivations.emplace_back("Y", 0, alg, [two_pi_i](const BasisKey& k) {
    if (k.b == 0) return Coeffs{};
    return Coeffs{{k, Scalar(two_pi_i * static_cast<double>(k.b))}};
  });
  out.traces.push_back(Functional{"tau", 0, [](const BasisKey& k) {
                                    return k.a == 0 && k.b == 0 ? Scalar::one(Backend::Approx)
                                                                : Scalar::zero(Backend::Approx);
                                  }});
  out.elements.emplace("U", AlgebraElement::basis(alg, {1, 0}));
  out.elements.emplace("V", AlgebraElement::basis(alg, {0, 1}));
  return out;
}

StandardAlgebra circle_laurent() {
  auto alg = std::make_shared<const LaurentCircle>();
  StandardAlgebra out;
  out.algebra = alg;
  out.derivations.emplace_back(
      "X", 0, alg,
      [](const BasisKey& k) {
        if (k.a == 0) return Coeffs{};
        return Coeffs{{k, Scalar(GaussianRational{mpq_class(0), mpq_class(k.a)})}};
      },
      1);
  out.traces.push_back(Functional{"tau", 0, [](const BasisKey& k) {
                                    return k.a == 0 ? Scalar::one(Backend::Gaussian)
                                                    : Scalar::zero(Backend::Gaussian);
                                  }});
  out.elements.emplace("z", AlgebraElement::basis(alg, {1, 0}));
  return out;
}

StandardAlgebra truncated_polynomial(int n, Backend backend) {
  if (n < 1) throw PreconditionError("truncated polynomial needs n >= 1");
  std::vector<TableAlgebra::BasisElement> basis;
  for (int k = 0; k < n; ++k)
    basis.push_back({k == 0 ? "1" : k == 1 ? "x" : "x^" + std::to_string(k), 0});
  const Scalar one = Scalar::one(backend);
  std::vector<Coeffs> table(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i + j < n) table[i * n + j] = Coeffs{{BasisKey{i + j, 0}, one}};
  StandardAlgebra out;
  out.algebra = TableAlgebra::create("truncated_polynomial", std::move(basis),
                                     Coeffs{{BasisKey{0, 0}, one}}, std::move(table), backend);
  auto x_power_d = [n, backend](int shift) {
    return [n, backend, shift](const BasisKey& k) {
      // x^shift d/dx on x^k = k x^{k-1+shift}
      int e = k.a - 1 + shift;
      if (k.a == 0 || e >= n) return Coeffs{};
      return Coeffs{{BasisKey{e, 0}, Scalar::from_int(k.a, backend)}};
    };
  };
  out.derivations.emplace_back("x d/dx", 0, out.algebra, x_power_d(1));
  out.derivations.emplace_back("x^2 d/dx", 0, out.algebra, x_power_d(2));
  for (int k = 0; k < n; ++k)
    out.traces.push_back(
        table_functional("c" + std::to_string(k), 0, Coeffs{{BasisKey{k, 0}, one}}, backend));
  for (int k = 0; k < n; ++k)
    out.elements.emplace(out.algebra->name({k, 0}), AlgebraElement::basis(out.algebra, {k, 0}));
  return out;
}

StandardAlgebra ground_field(Backend backend) {
  StandardAlgebra out;
  const Scalar one = Scalar::one(backend);
  out.algebra = TableAlgebra::create("ground_field", {{"1", 0}}, Coeffs{{BasisKey{0, 0}, one}},
                                     {Coeffs{{BasisKey{0, 0}, one}}}, backend);
  out.traces.push_back(table_functional("id", 0, Coeffs{{BasisKey{0, 0}, one}}, backend));
  out.elements.emplace("1", AlgebraElement::unit(out.algebra));
  return out;
}

namespace {

std::string grassmann_name(unsigned mask) {
  if (mask == 0) return "1";
  std::string s;
  for (int i = 0; i < 32; ++i)
    if (mask & (1u << i)) s += "xi" + std::to_string(i + 1);
  return s;
}

// Sign of xi_S xi_T after sorting into xi_{S u T}; 0 if they overlap.
int grassmann_sign(unsigned s, unsigned t) {
  if (s & t) return 0;
  int inversions = 0;
  for (int j = 0; j < 32; ++j)
    if (t & (1u << j)) inversions += std::popcount(s >> (j + 1));
  return inversions % 2 ? -1 : 1;
}

}  // namespace

StandardAlgebra grassmann(int k, Backend backend) {
  if (k < 1 || k > 8) throw PreconditionError("grassmann needs 1 <= k <= 8");
  const unsigned n = 1u << k;
  std::vector<TableAlgebra::BasisElement> basis;
  for (unsigned m = 0; m < n; ++m) basis.push_back({grassmann_name(m), std::popcount(m) % 2});
  std::vector<Coeffs> table(static_cast<std::size_t>(n) * n);
  for (unsigned s = 0; s < n; ++s)
    for (unsigned t = 0; t < n; ++t)
      if (int sg = grassmann_sign(s, t))
        table[s * n + t] = Coeffs{{BasisKey{static_cast<int>(s | t), 0}, Scalar::from_int(sg, backend)}};
  StandardAlgebra out;
  out.algebra = TableAlgebra::create("grassmann", std::move(basis),
                                     Coeffs{{BasisKey{0, 0}, Scalar::one(backend)}}, std::move(table),
                                     backend);
  out.derivations.emplace_back("E", 0, out.algebra, [backend](const BasisKey& key) {
    int deg = std::popcount(static_cast<unsigned>(key.a));
    if (deg == 0) return Coeffs{};
    return Coeffs{{key, Scalar::from_int(deg, backend)}};
  });
  if (k >= 3) {
    out.derivations.emplace_back("Q", 1, out.algebra, [backend](const BasisKey& key) {
      const unsigned s = static_cast<unsigned>(key.a);
      if (!(s & 4u)) return Coeffs{};
      // Left derivative by xi3: move xi3 to the front, then drop it.
      int sign = std::popcount(s & 3u) % 2 ? -1 : 1;
      unsigned rest = s & ~4u;
      int sg = grassmann_sign(3u, rest);
      if (sg == 0) return Coeffs{};
      return Coeffs{{BasisKey{static_cast<int>(rest | 3u), 0}, Scalar::from_int(sign * sg, backend)}};
    });
  }
  for (unsigned m = 0; m < n; ++m) {
    out.traces.push_back(table_functional(grassmann_name(m), std::popcount(m) % 2,
                                          Coeffs{{BasisKey{static_cast<int>(m), 0}, Scalar::one(backend)}},
                                          backend));
    out.elements.emplace(grassmann_name(m), AlgebraElement::basis(out.algebra, {static_cast<int>(m), 0}));
  }
  return out;
}

StandardAlgebra super_truncated(Backend backend) {
  // index 2k+e <-> x^k xi^e, k < 3
  std::vector<TableAlgebra::BasisElement> basis;
  const char* names[6] = {"1", "xi", "x", "x*xi", "x^2", "x^2*xi"};
  for (int i = 0; i < 6; ++i) basis.push_back({names[i], i % 2});
  const Scalar one = Scalar::one(backend);
  std::vector<Coeffs> table(36);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      int k = i / 2 + j / 2, e = i % 2 + j % 2;
      if (k < 3 && e < 2) table[i * 6 + j] = Coeffs{{BasisKey{2 * k + e, 0}, one}};
    }
  StandardAlgebra out;
  out.algebra = TableAlgebra::create("super_truncated", std::move(basis),
                                     Coeffs{{BasisKey{0, 0}, one}}, std::move(table), backend);
  // Q(x^k) = k x^k xi, Q(x^k xi) = x^{k+1}
  out.derivations.emplace_back("Q", 1, out.algebra, [backend](const BasisKey& key) {
    int k = key.a / 2;
    if (key.a % 2 == 0) {
      if (k == 0) return Coeffs{};
      return Coeffs{{BasisKey{2 * k + 1, 0}, Scalar::from_int(k, backend)}};
    }
    if (k + 1 >= 3) return Coeffs{};
    return Coeffs{{BasisKey{2 * (k + 1), 0}, Scalar::one(backend)}};
  });
  // P(x^k) = k x^{k+1}, P(x^k xi) = (k+1) x^{k+1} xi
  out.derivations.emplace_back("P", 0, out.algebra, [backend](const BasisKey& key) {
    int k = key.a / 2, e = key.a % 2;
    int coeff = e == 0 ? k : k + 1;
    if (coeff == 0 || k + 1 >= 3) return Coeffs{};
    return Coeffs{{BasisKey{2 * (k + 1) + e, 0}, Scalar::from_int(coeff, backend)}};
  });
  for (int i = 0; i < 6; ++i) {
    out.traces.push_back(table_functional(names[i], i % 2, Coeffs{{BasisKey{i, 0}, one}}, backend));
    out.elements.emplace(names[i], AlgebraElement::basis(out.algebra, {i, 0}));
  }
  return out;
}

StandardAlgebra build_standard_algebra(const std::string& kind, const StandardParams& p) {
  if (kind == "matrix") return matrix_algebra(p.n, p.backend);
  if (kind == "graded_endomorphisms") return graded_endomorphisms(p.n0, p.n1, p.backend);
  if (kind == "quantum_torus") return quantum_torus(p.theta);
  if (kind == "circle_laurent") return circle_laurent();
  if (kind == "truncated_polynomial") return truncated_polynomial(p.n, p.backend);
  if (kind == "ground_field") return ground_field(p.backend);
  if (kind == "grassmann") return grassmann(p.n, p.backend);
  if (kind == "super_truncated") return super_truncated(p.backend);
  throw PreconditionError("unknown standard algebra kind: " + kind);
}

}  // namespace lrcyc
