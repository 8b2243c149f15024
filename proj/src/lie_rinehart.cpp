#include "lrcyc/lie_rinehart.hpp"

#include <algorithm>
#include <sstream>

#include "lrcyc/kernels.hpp"
#include "lrcyc/standard_algebras.hpp"

namespace lrcyc {

namespace {

// Sign of transposing adjacent homogeneous wedge factors.
int swap_sign(int pa, int pb) { return pa * pb == 1 ? 1 : -1; }

double coeffs_magnitude(const Coeffs& c) {
  double m = 0.0;
  for (const auto& e : c) m = std::max(m, e.second.magnitude());
  return m;
}

double lvec_magnitude(const LVec& v) {
  double m = 0.0;
  for (const auto& e : v) m = std::max(m, coeffs_magnitude(e.second));
  return m;
}

void lvec_add(LVec& target, int l, const Coeffs& r, const Scalar& factor) {
  Coeffs& slot = target[l];
  accumulate(slot, r, factor);
  if (slot.empty()) target.erase(l);
}

void lvec_add(LVec& target, const LVec& other, const Scalar& factor) {
  for (const auto& [l, r] : other) lvec_add(target, l, r, factor);
}

void sparse_add(SparseRow& target, const SparseRow& other, const Scalar& factor) {
  axpy(target, factor, other);
}

}  // namespace

// ------------------------------------------------------------ SuperLieRinehart

SuperLieRinehart::SuperLieRinehart(AlgebraPtr base, std::vector<LBasisElement> basis)
    : base_(base ? std::move(base) : ground_field().algebra), basis_(std::move(basis)) {
  for (const auto& b : basis_)
    if (b.parity != 0 && b.parity != 1) throw PreconditionError("L parity must be 0 or 1: " + b.id);
  std::sort(basis_.begin(), basis_.end(), [](const auto& x, const auto& y) {
    return std::tie(x.parity, x.id) < std::tie(y.parity, y.id);
  });
  for (std::size_t i = 1; i < basis_.size(); ++i)
    if (basis_[i].id == basis_[i - 1].id) throw PreconditionError("duplicate L basis id: " + basis_[i].id);
  const std::size_t n = basis_.size();
  brackets_.assign(n, std::vector<LVec>(n));
  anchors_.resize(n);
  actions_.resize(n);
}

bool SuperLieRinehart::base_is_even() const {
  if (!base_->is_finite()) return false;
  for (const auto& k : base_->basis())
    if (base_->parity(k) != 0) return false;
  return true;
}

int SuperLieRinehart::index_of(const std::string& id) const {
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i].id == id) return static_cast<int>(i);
  throw PreconditionError("unknown L basis element: " + id);
}

void SuperLieRinehart::check_index_pair(int i, int j) const {
  const int n = static_cast<int>(basis_.size());
  if (i < 0 || j < 0 || i >= n || j >= n) throw PreconditionError("L index out of range");
}

void SuperLieRinehart::set_bracket(const std::string& x, const std::string& y,
                                   const std::vector<std::pair<std::string, Coeffs>>& value) {
  const int i = index_of(x), j = index_of(y);
  const int par = (parity(i) + parity(j)) % 2;
  LVec v;
  for (const auto& [id, r] : value) {
    const int l = index_of(id);
    for (const auto& [k, s] : r) {
      if (!base_->contains(k)) throw PreconditionError("bracket coefficient outside R");
      if ((base_->parity(k) + parity(l)) % 2 != par)
        throw PreconditionError("bracket [" + x + "," + y + "] has the wrong parity");
      if (s.backend() != backend()) throw BackendMismatch("bracket coefficient backend");
    }
    lvec_add(v, l, r, Scalar::one(backend()));
  }
  const int sw = swap_sign(parity(i), parity(j));
  if (i == j && sw == -1 && !v.empty())
    throw PreconditionError("[" + x + "," + x + "] must vanish for even " + x);
  brackets_[i][j] = v;
  if (i != j) {
    LVec w;
    lvec_add(w, v, Scalar::from_int(sw, backend()));
    brackets_[j][i] = std::move(w);
  }
}

void SuperLieRinehart::set_bracket_scalar(const std::string& x, const std::string& y,
                                          const std::vector<std::pair<std::string, Scalar>>& value) {
  std::vector<std::pair<std::string, Coeffs>> v;
  const Coeffs unit = base_->unit();
  for (const auto& [id, s] : value) v.emplace_back(id, scaled(unit, s));
  set_bracket(x, y, v);
}

void SuperLieRinehart::set_anchor(const std::string& x, SuperDerivation d) {
  const int i = index_of(x);
  if (&d.algebra() != base_.get()) throw PreconditionError("anchor of " + x + " must act on R");
  if (d.parity() != parity(i)) throw PreconditionError("anchor of " + x + " has the wrong parity");
  anchors_[i] = std::move(d);
}

void SuperLieRinehart::set_action(const std::string& x, SuperDerivation d) {
  const int i = index_of(x);
  if (acted_ && acted_ != d.algebra_ptr())
    throw PreconditionError("all L elements must act on the same algebra");
  if (d.parity() != parity(i)) throw PreconditionError("action of " + x + " has the wrong parity");
  acted_ = d.algebra_ptr();
  actions_[i] = std::move(d);
}

const LVec& SuperLieRinehart::bracket(int i, int j) const {
  check_index_pair(i, j);
  return brackets_[i][j];
}

const SuperDerivation* SuperLieRinehart::anchor(int i) const {
  check_index_pair(i, i);
  return anchors_[i] ? &*anchors_[i] : nullptr;
}

const SuperDerivation* SuperLieRinehart::action(int i) const {
  check_index_pair(i, i);
  return actions_[i] ? &*actions_[i] : nullptr;
}

bool SuperLieRinehart::has_action() const { return static_cast<bool>(acted_); }

LVec SuperLieRinehart::basis_vector(int i) const {
  check_index_pair(i, i);
  return LVec{{i, base_->unit()}};
}

Coeffs SuperLieRinehart::anchor_apply(const LVec& x, const Coeffs& r) const {
  Coeffs out;
  const Scalar one = Scalar::one(backend());
  for (const auto& [l, a] : x) {
    if (!anchors_[l]) continue;
    Coeffs xr = anchors_[l]->apply(r);
    if (!xr.empty()) accumulate(out, base_->multiply(a, xr), one);
  }
  return out;
}

LVec SuperLieRinehart::bracket_of(const LVec& x, const LVec& y) const {
  if (!base_is_field() && !base_is_even())
    throw PreconditionError("brackets over a base ring with odd part are not supported");
  LVec out;
  const Scalar one = Scalar::one(backend());
  for (const auto& [i, a] : x) {
    for (const auto& [j, b] : y) {
      const Coeffs ab = base_->multiply(a, b);
      for (const auto& [l, r] : brackets_[i][j]) lvec_add(out, l, base_->multiply(ab, r), one);
      if (anchors_[i]) {
        Coeffs xb = anchors_[i]->apply(b);
        if (!xb.empty()) lvec_add(out, j, base_->multiply(a, xb), one);
      }
      if (anchors_[j]) {
        Coeffs ya = anchors_[j]->apply(a);
        if (!ya.empty())
          lvec_add(out, i, base_->multiply(b, ya), Scalar::from_int(swap_sign(parity(i), parity(j)), backend()));
      }
    }
  }
  return out;
}

double SuperLieRinehart::antisymmetry_residual() const {
  double worst = 0.0;
  const int n = static_cast<int>(size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      LVec d = brackets_[i][j];
      lvec_add(d, brackets_[j][i], Scalar::from_int(-swap_sign(parity(i), parity(j)), backend()));
      worst = std::max(worst, lvec_magnitude(d));
    }
  return worst;
}

double SuperLieRinehart::jacobi_residual() const {
  double worst = 0.0;
  const int n = static_cast<int>(size());
  const Scalar one = Scalar::one(backend());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        LVec X = basis_vector(i), Y = basis_vector(j), Z = basis_vector(k);
        LVec d = bracket_of(X, bracket_of(Y, Z));
        lvec_add(d, bracket_of(bracket_of(X, Y), Z), -one);
        const long s = parity(i) * parity(j) == 1 ? -1 : 1;
        lvec_add(d, bracket_of(Y, bracket_of(X, Z)), Scalar::from_int(-s, backend()));
        worst = std::max(worst, lvec_magnitude(d));
      }
  return worst;
}

double SuperLieRinehart::anchor_residual() const {
  if (base_is_field()) return 0.0;
  double worst = 0.0;
  const int n = static_cast<int>(size());
  const Scalar one = Scalar::one(backend());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (const auto& key : base_->basis()) {
        Coeffs r{{key, one}};
        LVec X = basis_vector(i), Y = basis_vector(j);
        Coeffs d = anchor_apply(bracket_of(X, Y), r);
        accumulate(d, anchor_apply(X, anchor_apply(Y, r)), -one);
        const long s = parity(i) * parity(j) == 1 ? -1 : 1;
        accumulate(d, anchor_apply(Y, anchor_apply(X, r)), Scalar::from_int(s, backend()));
        worst = std::max(worst, coeffs_magnitude(d));
      }
  return worst;
}

Coeffs SuperLieRinehart::action_apply(const LVec& x, const Coeffs& b) const {
  Coeffs out;
  for (const auto& [l, r] : x) {
    if (!actions_[l]) continue;
    if (!base_is_field()) throw PreconditionError("actions need R = k");
    auto it = r.find(BasisKey{0, 0});
    if (it == r.end()) continue;
    Scalar c = it->second;
    if (c.backend() != acted_->backend()) c = c.promote(acted_->backend());
    accumulate(out, actions_[l]->apply(b), c);
  }
  return out;
}

double SuperLieRinehart::action_residual(const std::vector<BasisKey>& samples) const {
  if (!acted_) return 0.0;
  std::vector<BasisKey> keys = samples;
  if (keys.empty()) {
    if (acted_->is_finite()) {
      keys = acted_->basis();
    } else {
      for (int a = -2; a <= 2; ++a)
        for (int b = -2; b <= 2; ++b)
          if (acted_->contains({a, b})) keys.push_back({a, b});
    }
  }
  double worst = 0.0;
  const int n = static_cast<int>(size());
  const Scalar one = Scalar::one(acted_->backend());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const LVec& br = brackets_[i][j];
      if (!br.empty() && actions_[i] && actions_[j]) {
        int tag = actions_[i]->two_pi_power() + actions_[j]->two_pi_power();
        for (const auto& e : br)
          if (actions_[e.first] && actions_[e.first]->two_pi_power() != tag)
            throw PreconditionError("action derivations carry inconsistent 2 pi factors");
      }
      for (const auto& key : keys) {
        Coeffs b{{key, one}};
        LVec X = basis_vector(i), Y = basis_vector(j);
        Coeffs d = action_apply(br, b);
        accumulate(d, action_apply(X, action_apply(Y, b)), -one);
        const long s = parity(i) * parity(j) == 1 ? -1 : 1;
        accumulate(d, action_apply(Y, action_apply(X, b)), Scalar::from_int(s, acted_->backend()));
        worst = std::max(worst, coeffs_magnitude(d));
      }
    }
  return worst;
}

void SuperLieRinehart::validate() const {
  const double tol = backend() == Backend::Approx ? 1e-9 : 0.0;
  if (antisymmetry_residual() > tol) throw PreconditionError("bracket is not graded antisymmetric");
  if (jacobi_residual() > tol) throw PreconditionError("bracket fails the graded Jacobi identity");
  if (anchor_residual() > tol) throw PreconditionError("anchor is not a Lie homomorphism");
  const double atol = acted_ && acted_->backend() == Backend::Approx ? 1e-9 : 0.0;
  if (action_residual() > atol) throw PreconditionError("action is not a Lie homomorphism");
}

// ------------------------------------------------------------ RightModule

RightModule::RightModule(std::vector<std::string> names, std::vector<int> parities, Backend backend)
    : names_(std::move(names)), parities_(std::move(parities)), backend_(backend) {
  if (names_.size() != parities_.size()) throw ShapeMismatch("module names and parities differ in length");
}

void RightModule::set_action(int l_index, SparseMatrix m) {
  if (m.rows() != dimension() || m.cols() != dimension()) throw ShapeMismatch("module action matrix shape");
  if (m.backend() != backend_) throw BackendMismatch("module action backend");
  actions_.insert_or_assign(l_index, std::move(m));
}

void RightModule::set_r_action(const BasisKey& r, SparseMatrix m) {
  if (m.rows() != dimension() || m.cols() != dimension()) throw ShapeMismatch("module R-action matrix shape");
  if (m.backend() != backend_) throw BackendMismatch("module R-action backend");
  r_actions_.insert_or_assign(r, std::move(m));
}

SparseRow RightModule::act(std::size_t k, int l_index) const {
  auto it = actions_.find(l_index);
  if (it == actions_.end()) return {};
  SparseRow out;
  for (const auto& e : it->second.entries())
    if (e.col == k) out.emplace_back(e.row, e.value);
  return out;
}

SparseRow RightModule::act(const SparseRow& m, int l_index) const {
  SparseRow out;
  for (const auto& [k, v] : m) sparse_add(out, act(k, l_index), v);
  return out;
}

SparseRow RightModule::act_r(const SparseRow& m, const Coeffs& r, const SuperAlgebra& base) const {
  SparseRow out;
  if (base.is_finite() && base.dimension() == 1) {
    auto it = r.find(BasisKey{0, 0});
    if (it != r.end()) sparse_add(out, m, it->second);
    return out;
  }
  for (const auto& [key, s] : r) {
    auto it = r_actions_.find(key);
    if (it == r_actions_.end()) throw PreconditionError("module has no action of R element " + base.name(key));
    const auto& mat = it->second;
    for (const auto& [k, v] : m) {
      SparseRow col;
      for (const auto& e : mat.entries())
        if (e.col == k) col.emplace_back(e.row, e.value);
      sparse_add(out, col, v * s);
    }
  }
  return out;
}

double RightModule::compatibility_residual(const SuperLieRinehart& lr) const {
  double worst = 0.0;
  const int n = static_cast<int>(lr.size());
  const Scalar one = Scalar::one(backend_);
  for (std::size_t k = 0; k < dimension(); ++k) {
    SparseRow m{{k, one}};
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        SparseRow lhs;
        for (const auto& [l, r] : lr.bracket(i, j)) sparse_add(lhs, act(act_r(m, r, lr.base()), l), one);
        sparse_add(lhs, act(act(m, i), j), -one);
        const long s = lr.parity(i) * lr.parity(j) == 1 ? -1 : 1;
        sparse_add(lhs, act(act(m, j), i), Scalar::from_int(s, backend_));
        for (const auto& e : lhs) worst = std::max(worst, e.second.magnitude());
      }
  }
  return worst;
}

ModulePtr trivial_module(const SuperLieRinehart& lr, std::string name) {
  auto m = std::make_shared<RightModule>(std::vector<std::string>{std::move(name)}, std::vector<int>{0},
                                         lr.backend());
  if (!lr.base_is_field()) {
    // m.r = (coefficient of 1 in r) m
    for (const auto& key : lr.base().basis()) {
      Scalar s = key == BasisKey{0, 0} ? Scalar::one(lr.backend()) : Scalar::zero(lr.backend());
      m->set_r_action(key, SparseMatrix::from_entries(1, 1, lr.backend(), {{0, 0, s}}));
    }
  }
  return m;
}

// ------------------------------------------------------------ chains

std::pair<int, std::vector<int>> wedge_normalize(const SuperLieRinehart& lr, std::vector<int> word) {
  int sign = 1;
  for (std::size_t i = 1; i < word.size(); ++i)
    for (std::size_t j = i; j > 0 && word[j - 1] > word[j]; --j) {
      sign *= swap_sign(lr.parity(word[j - 1]), lr.parity(word[j]));
      std::swap(word[j - 1], word[j]);
    }
  for (std::size_t i = 1; i < word.size(); ++i)
    if (word[i] == word[i - 1] && lr.parity(word[i]) == 0) return {0, std::move(word)};
  return {sign, std::move(word)};
}

LRChain::LRChain(LRPtr lr, ModulePtr module, int degree)
    : lr_(std::move(lr)), module_(std::move(module)), degree_(degree) {
  if (degree_ < 0) throw PreconditionError("LR chain degree must be nonnegative");
  if (lr_->backend() != module_->backend()) throw BackendMismatch("module and base ring backends differ");
}

void LRChain::add(const Key& k, const Scalar& v) {
  if (v.is_zero()) return;
  if (static_cast<int>(k.second.size()) != degree_) throw ShapeMismatch("wedge word length differs from degree");
  if (k.first >= module_->dimension()) throw ShapeMismatch("module index out of range");
  auto [it, inserted] = terms_.try_emplace(k, v);
  if (!inserted) {
    it->second += v;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void LRChain::add_word(std::size_t module_index, std::vector<int> word, const Scalar& v) {
  for (int l : word)
    if (l < 0 || l >= static_cast<int>(lr_->size())) throw PreconditionError("L index out of range");
  auto [sign, sorted] = wedge_normalize(*lr_, std::move(word));
  if (sign == 0) return;
  add(Key{module_index, std::move(sorted)}, sign < 0 ? -v : v);
}

void LRChain::add_word(const SparseRow& m, const std::vector<int>& word, const Scalar& v) {
  for (const auto& [k, s] : m) add_word(k, word, v * s);
}

void LRChain::add(const LRChain& o, const Scalar& factor) {
  if (lr_ != o.lr_ || module_ != o.module_) throw PreconditionError("LR chains over different data");
  if (degree_ != o.degree_) throw ShapeMismatch("LR chains of different degree");
  for (const auto& [k, v] : o.terms_) add(k, v * factor);
}

double LRChain::max_magnitude() const {
  double m = 0.0;
  for (const auto& e : terms_) m = std::max(m, e.second.magnitude());
  return m;
}

LRChain& LRChain::operator+=(const LRChain& o) {
  add(o, Scalar::one(module_->backend()));
  return *this;
}

LRChain& LRChain::operator-=(const LRChain& o) {
  add(o, -Scalar::one(module_->backend()));
  return *this;
}

LRChain& LRChain::operator*=(const Scalar& s) {
  std::map<Key, Scalar> out;
  for (const auto& [k, v] : terms_) {
    Scalar w = v * s;
    if (!w.is_zero()) out.emplace(k, std::move(w));
  }
  terms_ = std::move(out);
  return *this;
}

bool LRChain::operator==(const LRChain& o) const {
  return lr_ == o.lr_ && module_ == o.module_ && degree_ == o.degree_ && terms_ == o.terms_;
}

std::string LRChain::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << v.to_string() << ")*" << module_->name(k.first);
    for (std::size_t i = 0; i < k.second.size(); ++i) os << (i ? "^" : "(x)") << lr_->id(k.second[i]);
  }
  return os.str();
}

LRChain wedge_normalize(const LRPtr& lr, const ModulePtr& module, int degree,
                        const std::vector<std::tuple<SparseRow, std::vector<int>, Scalar>>& raw) {
  LRChain out(lr, module, degree);
  for (const auto& [m, word, v] : raw) out.add_word(m, word, v);
  return out;
}

LRChain lr_boundary(const LRChain& c) {
  const int p = c.degree();
  if (p < 1) throw PreconditionError("the boundary needs degree >= 1");
  const SuperLieRinehart& lr = c.lr();
  const RightModule& mod = c.module();
  if (!lr.base_is_field() && !lr.base_is_even())
    throw PreconditionError("boundary over a base ring with odd part is not supported");
  LRChain out(c.lr_ptr(), c.module_ptr(), p - 1);
  const Scalar one = Scalar::one(mod.backend());
  for (const auto& [key, v] : c.terms()) {
    const auto& [k, w] = key;
    SparseRow m{{k, one}};
    for (int i = 0; i < p; ++i) {
      int kappa = 1;
      for (int q = 0; q < i; ++q) kappa *= swap_sign(lr.parity(w[i]), lr.parity(w[q]));
      std::vector<int> rest;
      for (int q = 0; q < p; ++q)
        if (q != i) rest.push_back(w[q]);
      SparseRow mx = mod.act(k, w[i]);
      if (!mx.empty()) out.add_word(mx, rest, kappa < 0 ? v : -v);
    }
    for (int i = 0; i < p; ++i)
      for (int j = i + 1; j < p; ++j) {
        const LVec& br = lr.bracket(w[i], w[j]);
        if (br.empty()) continue;
        int kappa = 1;
        for (int q = 0; q < i; ++q) kappa *= swap_sign(lr.parity(w[i]), lr.parity(w[q]));
        for (int q = 0; q < j; ++q)
          if (q != i) kappa *= swap_sign(lr.parity(w[j]), lr.parity(w[q]));
        std::vector<int> word{0};
        for (int q = 0; q < p; ++q)
          if (q != i && q != j) word.push_back(w[q]);
        for (const auto& [l, r] : br) {
          word[0] = l;
          out.add_word(mod.act_r(m, r, lr.base()), word, kappa < 0 ? -v : v);
        }
      }
  }
  return out;
}

std::vector<std::vector<int>> normal_words(const SuperLieRinehart& lr, int p) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  const int n = static_cast<int>(lr.size());
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == p) {
      out.push_back(cur);
      return;
    }
    for (int l = start; l < n; ++l) {
      cur.push_back(l);
      self(self, lr.parity(l) == 1 ? l : l + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

namespace {

struct WordIndex {
  std::vector<std::vector<int>> words;
  std::map<std::vector<int>, std::size_t> index;

  WordIndex(const SuperLieRinehart& lr, int p) : words(normal_words(lr, p)) {
    for (std::size_t i = 0; i < words.size(); ++i) index.emplace(words[i], i);
  }
};

SparseRow chain_to_sparse(const LRChain& c, const WordIndex& wi) {
  SparseRow r;
  for (const auto& [k, v] : c.terms()) r.emplace_back(k.first * wi.words.size() + wi.index.at(k.second), v);
  std::sort(r.begin(), r.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return r;
}

void require_solvable(const SuperLieRinehart& lr, const RightModule& m) {
  if (!lr.base_is_field() && !lr.base_is_even())
    throw PreconditionError("homology over a base ring with odd part is not supported");
  if (m.backend() == Backend::Approx) throw PreconditionError("LR homology needs an exact backend");
}

}  // namespace

std::size_t lr_chain_dim(const SuperLieRinehart& lr, const RightModule& m, int p) {
  return m.dimension() * normal_words(lr, p).size();
}

std::size_t lr_key_index(const SuperLieRinehart& lr, const RightModule& m, int p, const LRChain::Key& key) {
  WordIndex wi(lr, p);
  auto it = wi.index.find(key.second);
  if (it == wi.index.end() || key.first >= m.dimension()) throw PreconditionError("key is not in normal form");
  return key.first * wi.words.size() + it->second;
}

Vector lr_chain_to_vector(const LRChain& c) {
  WordIndex wi(c.lr(), c.degree());
  Vector v(c.module().dimension() * wi.words.size(), Scalar::zero(c.module().backend()));
  for (const auto& [i, s] : chain_to_sparse(c, wi)) v[i] = s;
  return v;
}

LRChain lr_vector_to_chain(const LRPtr& lr, const ModulePtr& m, int p, const Vector& v) {
  WordIndex wi(*lr, p);
  const std::size_t w = wi.words.size();
  if (v.size() != m->dimension() * w) throw ShapeMismatch("vector length differs from dim C_p");
  LRChain out(lr, m, p);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) out.add(LRChain::Key{i / w, wi.words[i % w]}, v[i]);
  return out;
}

SparseMatrix lr_boundary_matrix(const LRPtr& lr, const ModulePtr& m, int p) {
  WordIndex in(*lr, p);
  const std::size_t cols = m->dimension() * in.words.size();
  if (p == 0) return SparseMatrix(0, cols, m->backend());
  WordIndex out(*lr, p - 1);
  const std::size_t rows = m->dimension() * out.words.size();
  const std::size_t w = in.words.size();
  return kernels::assemble_columns_parallel(rows, cols, m->backend(), [&](std::size_t j) {
    LRChain c(lr, m, p);
    c.add(LRChain::Key{j / w, in.words[j % w]}, Scalar::one(m->backend()));
    return chain_to_sparse(lr_boundary(c), out);
  });
}

std::size_t lr_homology_dim(const LRPtr& lr, const ModulePtr& m, int p) {
  if (p < 0) throw PreconditionError("negative degree");
  require_solvable(*lr, *m);
  return homology_dimension(lr_boundary_matrix(lr, m, p + 1), lr_boundary_matrix(lr, m, p));
}

const char* chain_class_name(ChainClass c) {
  switch (c) {
    case ChainClass::NotCycle: return "not-cycle";
    case ChainClass::CycleNotBoundary: return "cycle-not-boundary";
    case ChainClass::Boundary: return "boundary";
  }
  return "?";
}

bool is_lr_cycle(const LRChain& c) { return c.degree() == 0 || lr_boundary(c).is_zero(); }

ChainClass classify_chain(const LRChain& c) {
  require_solvable(c.lr(), c.module());
  if (!is_lr_cycle(c)) return ChainClass::NotCycle;
  SparseMatrix d = lr_boundary_matrix(c.lr_ptr(), c.module_ptr(), c.degree() + 1);
  Subspace im(d.rows(), d.backend());
  for (const auto& col : d.column_list()) im.add(col);
  return im.contains(to_sparse(lr_chain_to_vector(c))) ? ChainClass::Boundary : ChainClass::CycleNotBoundary;
}

std::vector<Vector> invariants(const SuperLieRinehart& lr, const RightModule& m) {
  const std::size_t d = m.dimension();
  std::vector<SparseMatrix::Entry> entries;
  for (int i = 0; i < static_cast<int>(lr.size()); ++i) {
    auto it = m.actions().find(i);
    if (it == m.actions().end()) continue;
    for (const auto& e : it->second.entries()) entries.push_back({i * d + e.row, e.col, e.value});
  }
  return kernel_basis(SparseMatrix::from_entries(lr.size() * d, d, m.backend(), std::move(entries)));
}

// ------------------------------------------------------------ trace modules

namespace {

TraceModule finish_trace_module(std::vector<PartialTrace> traces, const SuperLieRinehart& lr,
                                const std::function<Vector(const PartialTrace&, const SuperDerivation&)>& acted,
                                const std::function<Vector(const PartialTrace&)>& sampled) {
  std::vector<std::string> names;
  std::vector<int> parities;
  for (const auto& t : traces) {
    names.push_back(t.name());
    parities.push_back(t.parity());
  }
  if (traces.empty()) throw AdmissibilityError("no partial traces on J^p");
  const Backend b = traces.front().domain().algebra().backend();
  auto module = std::make_shared<RightModule>(names, parities, b);
  std::vector<Vector> span;
  for (const auto& t : traces) span.push_back(sampled(t));
  for (int i = 0; i < static_cast<int>(lr.size()); ++i) {
    const SuperDerivation* d = lr.action(i);
    if (!d) continue;
    std::vector<SparseMatrix::Entry> entries;
    for (std::size_t k = 0; k < traces.size(); ++k) {
      Vector image = acted(traces[k], *d);
      auto coords = coordinates_in_span(image, span);
      if (!coords)
        throw AdmissibilityError("the action of " + lr.id(i) + " leaves the space of partial traces");
      for (std::size_t l = 0; l < coords->size(); ++l)
        if (!(*coords)[l].is_zero()) entries.push_back({l, k, (*coords)[l]});
    }
    module->set_action(i, SparseMatrix::from_entries(traces.size(), traces.size(), b, std::move(entries)));
  }
  return TraceModule{module, std::move(traces)};
}

}  // namespace

TraceModule functional_module(const std::vector<PartialTrace>& functionals, const SuperLieRinehart& lr) {
  if (functionals.empty()) throw AdmissibilityError("no partial traces on J^p");
  const IdealPower& jp = functionals.front().domain();
  const AlgebraPtr& b_alg = jp.algebra_ptr();
  if (lr.has_action() && lr.acted_algebra() != b_alg)
    throw PreconditionError("the Lie-Rinehart action lives on a different algebra");
  for (const auto& f : functionals)
    if (&f.domain() != &jp || !f.has_values()) throw PreconditionError("functionals must share a finite domain");
  const auto jbasis = jp.basis_elements();
  const std::size_t m = jbasis.size();
  // X(j_c) in coordinates of the J^p basis.
  std::map<const SuperDerivation*, std::vector<Vector>> images;
  for (int i = 0; i < static_cast<int>(lr.size()); ++i) {
    const SuperDerivation* d = lr.action(i);
    if (!d) continue;
    auto& cols = images[d];
    for (const auto& j : jbasis) {
      auto coords = jp.coordinates(d->apply(j.coeffs()));
      if (!coords) throw AdmissibilityError(lr.id(i) + " does not preserve span(J^p)");
      cols.push_back(std::move(*coords));
    }
  }
  const Backend b = b_alg->backend();
  return finish_trace_module(
      functionals, lr,
      [&](const PartialTrace& t, const SuperDerivation& d) {
        Vector out(m, Scalar::zero(b));
        const auto& cols = images.at(&d);
        for (std::size_t c = 0; c < m; ++c)
          for (std::size_t l = 0; l < m; ++l)
            if (!cols[c][l].is_zero() && !t.values()[l].is_zero()) out[c] += cols[c][l] * t.values()[l];
        return out;
      },
      [](const PartialTrace& t) { return t.values(); });
}

TraceModule trace_module(const AlgebraPtr& b_alg, const IdealPtr& jp, const SuperLieRinehart& lr) {
  if (lr.has_action() && lr.acted_algebra() != b_alg)
    throw PreconditionError("the Lie-Rinehart action lives on a different algebra");
  return functional_module(partial_trace_space(b_alg, jp), lr);
}

TraceModule trace_module_sampled(const std::vector<PartialTrace>& traces, const SuperLieRinehart& lr,
                                 const std::vector<BasisKey>& samples) {
  if (traces.empty()) throw AdmissibilityError("no partial traces given");
  const AlgebraPtr& alg = traces.front().domain().algebra_ptr();
  if (lr.has_action() && lr.acted_algebra() != alg)
    throw PreconditionError("the Lie-Rinehart action lives on a different algebra");
  const Scalar one = Scalar::one(alg->backend());
  return finish_trace_module(
      traces, lr,
      [&](const PartialTrace& t, const SuperDerivation& d) {
        Vector out;
        for (const auto& k : samples) out.push_back(t.evaluate(d.apply(Coeffs{{k, one}})));
        return out;
      },
      [&](const PartialTrace& t) {
        Vector out;
        for (const auto& k : samples) out.push_back(t.evaluate(Coeffs{{k, one}}));
        return out;
      });
}

LRPtr lie_algebra(std::vector<LBasisElement> basis,
                  const std::vector<std::tuple<std::string, std::string,
                                               std::vector<std::pair<std::string, long>>>>& brackets,
                  Backend backend) {
  auto lr = std::make_shared<SuperLieRinehart>(ground_field(backend).algebra, std::move(basis));
  for (const auto& [x, y, value] : brackets) {
    std::vector<std::pair<std::string, Scalar>> v;
    for (const auto& [id, c] : value) v.emplace_back(id, Scalar::from_int(c, backend));
    lr->set_bracket_scalar(x, y, v);
  }
  lr->validate();
  return lr;
}

}  // namespace lrcyc
