#include "lrcyc/random.hpp"

namespace lrcyc {

namespace {

long uniform(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

}  // namespace

Scalar random_scalar(std::mt19937_64& rng, Backend backend) {
  auto nonzero = [&] {
    long n = uniform(rng, 1, 3) * (uniform(rng, 0, 1) ? 1 : -1);
    return mpq_class(n, uniform(rng, 1, 3));
  };
  switch (backend) {
    case Backend::Rational: {
      mpq_class q = nonzero();
      q.canonicalize();
      return Scalar(q);
    }
    case Backend::Gaussian: {
      mpq_class re = nonzero(), im(uniform(rng, -2, 2), uniform(rng, 1, 2));
      re.canonicalize();
      im.canonicalize();
      return Scalar(GaussianRational{re, im});
    }
    case Backend::Approx:
      return Scalar(std::complex<double>(std::uniform_real_distribution<double>(-1.0, 1.0)(rng), 0.0));
  }
  throw PreconditionError("unknown backend");
}

HochschildChain random_hochschild(const AlgebraPtr& alg, int p, std::mt19937_64& rng,
                                  const std::vector<BasisKey>& keys, int terms) {
  if (keys.empty()) throw PreconditionError("no keys to sample from");
  HochschildChain out(alg, p);
  for (int t = 0; t < terms; ++t) {
    Tuple tuple(p + 1);
    for (auto& k : tuple) k = keys[uniform(rng, 0, static_cast<long>(keys.size()) - 1)];
    out.add(tuple, random_scalar(rng, alg->backend()));
  }
  return out;
}

LRChain random_lr_chain(const LRPtr& lr, const ModulePtr& m, int p, std::mt19937_64& rng, int terms) {
  LRChain out(lr, m, p);
  const auto words = normal_words(*lr, p);
  if (words.empty() || m->dimension() == 0) return out;
  for (int t = 0; t < terms; ++t) {
    std::size_t k = uniform(rng, 0, static_cast<long>(m->dimension()) - 1);
    const auto& w = words[uniform(rng, 0, static_cast<long>(words.size()) - 1)];
    out.add(LRChain::Key{k, w}, random_scalar(rng, m->backend()));
  }
  return out;
}

}  // namespace lrcyc
