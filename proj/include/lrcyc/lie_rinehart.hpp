#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lrcyc/derivation.hpp"
#include "lrcyc/ideal.hpp"
#include "lrcyc/linalg.hpp"

namespace lrcyc {

/// Element of L as an R-combination of the basis: L index -> coefficient in R.
using LVec = std::map<int, Coeffs>;

struct LBasisElement {
  std::string id;
  int parity = 0;
};

/// A super-Lie-Rinehart pair (L, R) with L free on a finite homogeneous
/// basis, optionally acting on an auxiliary algebra B by derivations.
///
/// Basis elements are kept sorted by (parity, id); this order is the one
/// used by the exterior normal form. Built through the mutating setters and
/// then shared as const.
class SuperLieRinehart {
 public:
  /// `base` == nullptr means R is the ground field (rational backend).
  SuperLieRinehart(AlgebraPtr base, std::vector<LBasisElement> basis);

  /// Sets [x, y] and, by graded antisymmetry, [y, x]. Coefficients lie in R.
  void set_bracket(const std::string& x, const std::string& y,
                   const std::vector<std::pair<std::string, Coeffs>>& value);
  /// Same with scalar coefficients (R = k).
  void set_bracket_scalar(const std::string& x, const std::string& y,
                          const std::vector<std::pair<std::string, Scalar>>& value);
  void set_anchor(const std::string& x, SuperDerivation d);
  void set_action(const std::string& x, SuperDerivation d);

  const SuperAlgebra& base() const { return *base_; }
  const AlgebraPtr& base_ptr() const { return base_; }
  bool base_is_field() const { return base_->is_finite() && base_->dimension() == 1; }
  bool base_is_even() const;
  Backend backend() const { return base_->backend(); }

  std::size_t size() const { return basis_.size(); }
  const std::string& id(int i) const { return basis_.at(i).id; }
  int parity(int i) const { return basis_.at(i).parity; }
  int index_of(const std::string& id) const;

  /// [X_i, X_j]
  const LVec& bracket(int i, int j) const;
  const SuperDerivation* anchor(int i) const;
  const SuperDerivation* action(int i) const;
  /// The algebra the action lives on, or nullptr.
  const AlgebraPtr& acted_algebra() const { return acted_; }
  bool has_action() const;

  /// Bracket of R-combinations, using the anchor for coefficients.
  LVec bracket_of(const LVec& x, const LVec& y) const;
  LVec basis_vector(int i) const;

  // Residual checks; each returns the largest coefficient magnitude of the
  // defect (0 when the identity holds exactly).
  double antisymmetry_residual() const;
  double jacobi_residual() const;
  /// anchor([X,Y]) = [anchor X, anchor Y] on the basis of R.
  double anchor_residual() const;
  /// action([X,Y]) = [action X, action Y] on basis elements of B (finite) or
  /// on `samples` (countable B). Needs scalar bracket coefficients.
  double action_residual(const std::vector<BasisKey>& samples = {}) const;

  /// Throws PreconditionError if any residual above is nonzero (exact) or
  /// above 1e-9 (approximate).
  void validate() const;

 private:
  void check_index_pair(int i, int j) const;
  Coeffs anchor_apply(const LVec& x, const Coeffs& r) const;
  Coeffs action_apply(const LVec& x, const Coeffs& b) const;

  AlgebraPtr base_;
  std::vector<LBasisElement> basis_;
  std::vector<std::vector<LVec>> brackets_;
  std::vector<std::optional<SuperDerivation>> anchors_;
  std::vector<std::optional<SuperDerivation>> actions_;
  AlgebraPtr acted_;
};

using LRPtr = std::shared_ptr<const SuperLieRinehart>;

/// Finite-dimensional right (L, R)-module: m.X given by a matrix per L basis
/// element acting on column vectors, and m.r by a matrix per R basis element
/// when R is not the ground field.
class RightModule {
 public:
  RightModule(std::vector<std::string> names, std::vector<int> parities, Backend backend);

  void set_action(int l_index, SparseMatrix m);
  void set_r_action(const BasisKey& r, SparseMatrix m);

  std::size_t dimension() const { return names_.size(); }
  Backend backend() const { return backend_; }
  const std::string& name(std::size_t k) const { return names_.at(k); }
  int parity(std::size_t k) const { return parities_.at(k); }

  /// Image of basis vector k under .X_i (zero if unset).
  SparseRow act(std::size_t k, int l_index) const;
  SparseRow act(const SparseRow& m, int l_index) const;
  /// m.r for r in R; identity scaling when R is the ground field.
  SparseRow act_r(const SparseRow& m, const Coeffs& r, const SuperAlgebra& base) const;
  const std::map<int, SparseMatrix>& actions() const { return actions_; }

  /// m.[X,Y] = (m.X).Y - (-1)^{|X||Y|} (m.Y).X on basis vectors.
  double compatibility_residual(const SuperLieRinehart& lr) const;

 private:
  std::vector<std::string> names_;
  std::vector<int> parities_;
  Backend backend_;
  std::map<int, SparseMatrix> actions_;
  std::map<BasisKey, SparseMatrix> r_actions_;
};

using ModulePtr = std::shared_ptr<const RightModule>;

/// One-dimensional module with zero action.
ModulePtr trivial_module(const SuperLieRinehart& lr, std::string name = "1");

/// Element of M (x)_R Lambda^p_R L in normal form: keys are (module basis
/// index, nondecreasing L indices with no repeated even index).
class LRChain {
 public:
  using Key = std::pair<std::size_t, std::vector<int>>;

  LRChain(LRPtr lr, ModulePtr module, int degree);

  /// Normalizes the wedge word with Koszul signs before adding.
  void add_word(std::size_t module_index, std::vector<int> word, const Scalar& v);
  void add_word(const SparseRow& m, const std::vector<int>& word, const Scalar& v);
  /// Adds an already normalized key.
  void add(const Key& k, const Scalar& v);
  void add(const LRChain& o, const Scalar& factor);

  const SuperLieRinehart& lr() const { return *lr_; }
  const LRPtr& lr_ptr() const { return lr_; }
  const RightModule& module() const { return *module_; }
  const ModulePtr& module_ptr() const { return module_; }
  int degree() const { return degree_; }
  const std::map<Key, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  double max_magnitude() const;

  LRChain& operator+=(const LRChain& o);
  LRChain& operator-=(const LRChain& o);
  LRChain& operator*=(const Scalar& s);
  friend LRChain operator+(LRChain a, const LRChain& b) { return a += b; }
  friend LRChain operator-(LRChain a, const LRChain& b) { return a -= b; }
  friend LRChain operator*(const Scalar& s, LRChain a) { return a *= s; }
  bool operator==(const LRChain& o) const;

  std::string to_string() const;

 private:
  LRPtr lr_;
  ModulePtr module_;
  int degree_;
  std::map<Key, Scalar> terms_;
};

/// Sign of moving the symbols of `word` into normal order, together with the
/// sorted word; sign 0 when an even element repeats.
std::pair<int, std::vector<int>> wedge_normalize(const SuperLieRinehart& lr, std::vector<int> word);

/// Normal-form chain from raw (module vector, word, coefficient) triples.
LRChain wedge_normalize(const LRPtr& lr, const ModulePtr& module, int degree,
                        const std::vector<std::tuple<SparseRow, std::vector<int>, Scalar>>& raw);

/// The Lie-Rinehart boundary, degree p -> p - 1:
///   sum_i  -kappa_i (m.X_i) (x) X_1..^i..X_p
/// + sum_{i<j} kappa_ij m (x) [X_i, X_j] X_1..^i..^j..X_p
/// where kappa_i is the sign of moving X_i to the front and kappa_ij that of
/// then moving X_j behind it; each transposition of X, Y costs
/// -(-1)^{|X||Y|}. R-coefficients of brackets act on the module factor.
LRChain lr_boundary(const LRChain& c);

/// Normal-form words of length p.
std::vector<std::vector<int>> normal_words(const SuperLieRinehart& lr, int p);
std::size_t lr_chain_dim(const SuperLieRinehart& lr, const RightModule& m, int p);
/// Index of a normal key in the standard basis (module index major).
std::size_t lr_key_index(const SuperLieRinehart& lr, const RightModule& m, int p,
                         const LRChain::Key& key);
Vector lr_chain_to_vector(const LRChain& c);
LRChain lr_vector_to_chain(const LRPtr& lr, const ModulePtr& m, int p, const Vector& v);

/// Boundary C_p -> C_{p-1}; 0 x dim C_0 for p = 0.
SparseMatrix lr_boundary_matrix(const LRPtr& lr, const ModulePtr& m, int p);

std::size_t lr_homology_dim(const LRPtr& lr, const ModulePtr& m, int p);

enum class ChainClass { NotCycle, CycleNotBoundary, Boundary };
const char* chain_class_name(ChainClass c);
bool is_lr_cycle(const LRChain& c);
ChainClass classify_chain(const LRChain& c);

/// Basis of {m : m.X = 0 for all basis X}.
std::vector<Vector> invariants(const SuperLieRinehart& lr, const RightModule& m);

/// Partial traces on J^p with (tau.X)(j) = tau(X(j)).
struct TraceModule {
  ModulePtr module;
  std::vector<PartialTrace> traces;
};

/// Finite B: the full space of partial traces on J^p. Throws
/// AdmissibilityError when some X does not preserve span(J^p) or the action
/// leaves the trace space.
TraceModule trace_module(const AlgebraPtr& b_alg, const IdealPtr& jp, const SuperLieRinehart& lr);

/// Span of arbitrary functionals on a finite J^p with the same action; they
/// need not vanish on supercommutators (negative controls).
TraceModule functional_module(const std::vector<PartialTrace>& functionals, const SuperLieRinehart& lr);

/// Countable B: the span of the given functionals, with the action computed
/// from their values on `samples` (verified only there).
TraceModule trace_module_sampled(const std::vector<PartialTrace>& traces, const SuperLieRinehart& lr,
                                 const std::vector<BasisKey>& samples);

/// A Lie algebra over the ground field from structure constants.
LRPtr lie_algebra(std::vector<LBasisElement> basis,
                  const std::vector<std::tuple<std::string, std::string,
                                               std::vector<std::pair<std::string, long>>>>& brackets,
                  Backend backend = Backend::Rational);

}  // namespace lrcyc
