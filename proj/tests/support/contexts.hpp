#pragma once

// Shared fixtures for the test binaries: the Lie algebras, Lie-Rinehart pairs
// and pairing contexts that several suites sweep over.

#include <string>
#include <vector>

#include "lrcyc/pairing.hpp"
#include "lrcyc/standard_algebras.hpp"

namespace lrcyc::testing {

struct NamedAlgebra {
  std::string name;
  StandardAlgebra alg;
};

/// Q, Q[x]/x^3, M_2(Q), End(Q^{1|1}).
std::vector<NamedAlgebra> exact_algebras();

struct NamedLR {
  std::string name;
  LRPtr lr;
  ModulePtr module;
};

LRPtr abelian2();
LRPtr sl2();
LRPtr odd_generator();
/// L = R{X, Y} over R = Q[x]/x^3 with anchors x d/dx, x^2 d/dx and [X, Y] = Y.
LRPtr anchored_pair();
/// R = Q[x]/x^3 as a right module over anchored_pair(): m.X = -X(m), m.r = m r.
ModulePtr base_ring_module(const LRPtr& anchored);
/// The four families the boundary tests sweep (trivial modules) plus the
/// sl2 adjoint module and the base ring module of the anchored pair.
std::vector<NamedLR> boundary_families();

struct NamedContext {
  std::string name;
  PairingContext ctx;
};

/// Exact admissible contexts at degree p (those that exist at that degree).
std::vector<NamedContext> admissible_contexts(int p);

/// M_2 with the inner action of E11 and the functional c11 (not a trace).
PairingContext negative_control(int p);

/// End(1|1) with the odd derivation d = [F, -] and the supertrace itself, degree p.
PairingContext graded_end_context(int p);
/// M_2 with inner E11 action, trace, degree p.
PairingContext matrix_context(int p);

}  // namespace lrcyc::testing
