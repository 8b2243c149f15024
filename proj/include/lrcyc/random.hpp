#pragma once

#include <random>
#include <vector>

#include "lrcyc/hochschild.hpp"
#include "lrcyc/lie_rinehart.hpp"

namespace lrcyc {

/// Engine for sample i of a sweep seeded with `seed`.
inline std::mt19937_64 sample_rng(std::uint64_t seed, std::size_t index) {
  return std::mt19937_64(seed + index);
}

/// Nonzero rational n/d with |n| <= 3, 1 <= d <= 3 (plus an imaginary part
/// in the Gaussian backend; a real double in [-1, 1] for Approx).
Scalar random_scalar(std::mt19937_64& rng, Backend backend);

/// Sum of `terms` basis tensors with entries drawn from `keys`.
HochschildChain random_hochschild(const AlgebraPtr& alg, int p, std::mt19937_64& rng,
                                  const std::vector<BasisKey>& keys, int terms = 3);

/// Sum of `terms` normal monomials with random module index.
LRChain random_lr_chain(const LRPtr& lr, const ModulePtr& m, int p, std::mt19937_64& rng, int terms = 3);

}  // namespace lrcyc
