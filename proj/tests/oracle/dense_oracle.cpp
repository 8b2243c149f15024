#include "dense_oracle.hpp"

#include <map>
#include <stdexcept>

namespace oracle {

Matrix multiply(const Matrix& a, const Matrix& b) {
  const std::size_t inner = b.size();
  const std::size_t cols = inner ? b[0].size() : 0;
  Matrix out(a.size(), std::vector<mpq_class>(cols, 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner; ++k)
      if (a[i][k] != 0)
        for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

std::size_t rank(Matrix m) {
  std::size_t r = 0;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m[i][c] == 0) continue;
      mpq_class f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

namespace {

Matrix zeros(std::size_t r, std::size_t c) { return Matrix(r, std::vector<mpq_class>(c, 0)); }

long ipow(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::vector<int> digits(long idx, int n, int len) {
  std::vector<int> d(len);
  for (int i = len - 1; i >= 0; --i) {
    d[i] = static_cast<int>(idx % n);
    idx /= n;
  }
  return d;
}

long index_of(const std::vector<int>& d, int n) {
  long idx = 0;
  for (int x : d) idx = idx * n + x;
  return idx;
}

Algebra empty(int n) {
  Algebra a;
  a.n = n;
  a.mult.assign(n, std::vector<std::vector<mpq_class>>(n, std::vector<mpq_class>(n, 0)));
  return a;
}

// columns of a stacked beside b
Matrix hcat(const Matrix& a, const Matrix& b) {
  Matrix out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i].insert(out[i].end(), b[i].begin(), b[i].end());
  return out;
}

}  // namespace

Algebra field() {
  Algebra a = empty(1);
  a.mult[0][0][0] = 1;
  return a;
}

Algebra matrices(int k) {
  Algebra a = empty(k * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (int l = 0; l < k; ++l) a.mult[i * k + j][j * k + l][i * k + l] = 1;
  return a;
}

Algebra truncated(int k) {
  Algebra a = empty(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; i + j < k; ++j) a.mult[i][j][i + j] = 1;
  return a;
}

Matrix hochschild_b(const Algebra& a, int p) {
  const int n = a.n;
  Matrix out = zeros(ipow(n, p), ipow(n, p + 1));
  if (p == 0) return out;
  for (long col = 0; col < ipow(n, p + 1); ++col) {
    std::vector<int> t = digits(col, n, p + 1);
    for (int i = 0; i <= p; ++i) {
      // face i multiplies a_i a_{i+1}; face p multiplies a_p a_0
      const int x = t[i], y = t[(i + 1) % (p + 1)];
      for (int k = 0; k < n; ++k) {
        if (a.mult[x][y][k] == 0) continue;
        std::vector<int> s;
        if (i < p) {
          s.assign(t.begin(), t.begin() + i);
          s.push_back(k);
          s.insert(s.end(), t.begin() + i + 2, t.end());
        } else {
          s.push_back(k);
          s.insert(s.end(), t.begin() + 1, t.end() - 1);
        }
        const int sign = (i % 2 == 0) ? 1 : -1;
        out[index_of(s, n)][col] += sign * a.mult[x][y][k];
      }
    }
  }
  return out;
}

Matrix one_minus_t(const Algebra& a, int p) {
  const int n = a.n;
  const long dim = ipow(n, p + 1);
  Matrix out = zeros(dim, dim);
  for (long col = 0; col < dim; ++col) {
    std::vector<int> t = digits(col, n, p + 1);
    std::vector<int> r{t.back()};
    r.insert(r.end(), t.begin(), t.end() - 1);
    out[col][col] += 1;
    out[index_of(r, n)][col] -= (p % 2 == 0) ? 1 : -1;
  }
  return out;
}

long hh_dim(const Algebra& a, int p) {
  const long dim = ipow(a.n, p + 1);
  return dim - static_cast<long>(rank(hochschild_b(a, p))) - static_cast<long>(rank(hochschild_b(a, p + 1)));
}

long hc_dim(const Algebra& a, int p) {
  // rank of the induced map C_q / T_q -> C_{q-1} / T_{q-1} is
  // rank[b_q | T_{q-1}] - rank T_{q-1}
  auto induced_rank = [&](int q) -> long {
    if (q == 0) return 0;
    Matrix t = one_minus_t(a, q - 1);
    return static_cast<long>(rank(hcat(hochschild_b(a, q), t))) - static_cast<long>(rank(t));
  };
  const long quotient = ipow(a.n, p + 1) - static_cast<long>(rank(one_minus_t(a, p)));
  return quotient - induced_rank(p) - induced_rank(p + 1);
}

namespace {

Lie lie_empty(int n) {
  Lie g;
  g.n = n;
  g.parity.assign(n, 0);
  g.c.assign(n, std::vector<std::vector<mpq_class>>(n, std::vector<mpq_class>(n, 0)));
  return g;
}

void bracket(Lie& g, int i, int j, int k, long v) {
  g.c[i][j][k] = v;
  g.c[j][i][k] = -v;
}

// increasing index subsets of size p
std::vector<std::vector<int>> subsets(int n, int p) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == p) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

// sign of sorting a list of distinct integers, and the sorted list
std::pair<int, std::vector<int>> sort_sign(std::vector<int> w) {
  int s = 1;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = 0; j + 1 < w.size() - i; ++j)
      if (w[j] > w[j + 1]) {
        std::swap(w[j], w[j + 1]);
        s = -s;
      }
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == w[i - 1]) return {0, w};
  return {s, w};
}

}  // namespace

// d_p : M (x) Lambda^p g -> M (x) Lambda^{p-1} g for an even Lie algebra,
// d(m x1..xp) = sum_i (-1)^{i+1} (m.x_i) x1..^i..xp + sum_{i<j} (-1)^{i+j} m [xi,xj] x1..^i..^j..xp
Matrix lie_boundary(const Lie& g, int p) {
  const int dm = g.act.empty() ? 1 : static_cast<int>(g.act[0].size());
  const auto src = subsets(g.n, p), dst = subsets(g.n, p - 1);
  std::map<std::vector<int>, std::size_t> where;
  for (std::size_t i = 0; i < dst.size(); ++i) where[dst[i]] = i;
  Matrix out = zeros(dm * dst.size(), dm * src.size());
  for (int m = 0; m < dm; ++m)
    for (std::size_t s = 0; s < src.size(); ++s) {
      const auto& w = src[s];
      const std::size_t col = m * src.size() + s;
      for (int i = 0; i < p; ++i) {
        if (g.act.empty()) break;
        std::vector<int> rest;
        for (int q = 0; q < p; ++q)
          if (q != i) rest.push_back(w[q]);
        const int sign = (i % 2 == 0) ? 1 : -1;  // (-1)^{i+1} with 1-based i
        for (int m2 = 0; m2 < dm; ++m2) {
          const mpq_class& a = g.act[w[i]][m2][m];
          if (a != 0) out[m2 * dst.size() + where.at(rest)][col] += sign * a;
        }
      }
      for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j)
          for (int k = 0; k < g.n; ++k) {
            const mpq_class& v = g.c[w[i]][w[j]][k];
            if (v == 0) continue;
            std::vector<int> word{k};
            for (int q = 0; q < p; ++q)
              if (q != i && q != j) word.push_back(w[q]);
            auto [s2, sorted] = sort_sign(word);
            if (s2 == 0) continue;
            const int sign = ((i + j) % 2 == 0 ? 1 : -1) * s2;
            out[m * dst.size() + where.at(sorted)][col] += sign * v;
          }
    }
  return out;
}

Lie abelian(int n) { return lie_empty(n); }

Lie sl2() {
  // e, f, h
  Lie g = lie_empty(3);
  bracket(g, 0, 1, 2, 1);
  bracket(g, 2, 0, 0, 2);
  bracket(g, 2, 1, 1, -2);
  return g;
}

Lie sl2_adjoint() {
  Lie g = sl2();
  g.act.assign(3, zeros(3, 3));
  for (int x = 0; x < 3; ++x)
    for (int m = 0; m < 3; ++m)
      for (int k = 0; k < 3; ++k) g.act[x][k][m] = g.c[m][x][k];
  return g;
}

Lie odd_line() {
  Lie g = lie_empty(1);
  g.parity[0] = 1;
  return g;
}

long lie_homology_dim(const Lie& g, int p) {
  bool odd = false;
  for (int x : g.parity) odd = odd || x == 1;
  if (odd) {
    for (const auto& a : g.c)
      for (const auto& b : a)
        for (const auto& v : b)
          if (v != 0) throw std::invalid_argument("oracle: odd generators need zero brackets");
    if (!g.act.empty()) throw std::invalid_argument("oracle: odd generators need the trivial module");
    // monomials x^a (even exponents 0/1, odd ones unbounded) of total degree p
    const int n = g.n;
    std::vector<long> count(p + 1, 0);
    count[0] = 1;
    for (int i = 0; i < n; ++i) {
      std::vector<long> next(p + 1, 0);
      for (int d = 0; d <= p; ++d)
        for (int e = 0; d + e <= p && (g.parity[i] == 1 || e <= 1); ++e) next[d + e] += count[d];
      count = next;
    }
    return count[p];
  }
  const int dm = g.act.empty() ? 1 : static_cast<int>(g.act[0].size());
  const long dim = dm * static_cast<long>(subsets(g.n, p).size());
  long r_out = p == 0 ? 0 : static_cast<long>(rank(lie_boundary(g, p)));
  long r_in = p + 1 > g.n ? 0 : static_cast<long>(rank(lie_boundary(g, p + 1)));
  return dim - r_out - r_in;
}

}  // namespace oracle
