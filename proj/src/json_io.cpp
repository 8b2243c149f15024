#include "lrcyc/json_io.hpp"

#include <fstream>
#include <set>

namespace lrcyc {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ParseError(msg); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return v.dump();
  fail("expected a scalar string, got " + v.dump());
}

Scalar scalar_of(const Json& v, Backend b) {
  try {
    return parse_scalar(scalar_text(v), b);
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    fail("bad scalar " + v.dump() + ": " + e.what());
  }
}

// Widest backend among the scalar strings of a coefficient map {id: scalar}.
void scan_coeffs(const Json& m, Backend& b) {
  if (!m.is_object()) return;
  for (const auto& [id, v] : m.items()) {
    if (v.is_number_float()) b = join(b, Backend::Approx);
    if (!v.is_string()) continue;
    try {
      b = join(b, infer_backend(v.get<std::string>()));
    } catch (const std::exception&) {
      // reported when the scalar is parsed
    }
  }
}

Backend scan_algebra_backend(const Json& j) {
  Backend b = Backend::Rational;
  if (j.contains("unit")) scan_coeffs(j.at("unit"), b);
  if (j.contains("products"))
    for (const auto& pr : j.at("products"))
      if (pr.contains("result")) scan_coeffs(pr.at("result"), b);
  if (j.contains("derivations"))
    for (const auto& d : j.at("derivations"))
      if (d.contains("action"))
        for (const auto& [id, img] : d.at("action").items()) scan_coeffs(img, b);
  if (j.contains("traces"))
    for (const auto& t : j.at("traces"))
      if (t.contains("values")) scan_coeffs(t.at("values"), b);
  return b;
}

int parity_of(const Json& j) {
  int p = j.value("parity", 0);
  if (p != 0 && p != 1) fail("parity must be 0 or 1");
  return p;
}

BasisKey key_of(const SuperAlgebra& alg, const Json& id) {
  if (id.is_array() && id.size() == 2) {
    BasisKey k{id[0].get<std::int32_t>(), id[1].get<std::int32_t>()};
    if (!alg.contains(k)) fail("key " + id.dump() + " is not in the algebra");
    return k;
  }
  if (!id.is_string()) fail("basis id must be a string, got " + id.dump());
  auto k = alg.find(id.get<std::string>());
  if (!k) fail("unknown basis id '" + id.get<std::string>() + "'");
  return *k;
}

Coeffs coeffs_of(const SuperAlgebra& alg, const Json& j) {
  if (!j.is_object()) fail("expected an object {id: scalar}, got " + j.dump());
  Coeffs c;
  for (const auto& [id, v] : j.items()) accumulate(c, key_of(alg, Json(id)), scalar_of(v, alg.backend()));
  return c;
}

StandardAlgebra parse_standard(const Json& j) {
  StandardParams p;
  p.n = j.value("n", 0);
  p.n0 = j.value("n0", 0);
  p.n1 = j.value("n1", 0);
  p.theta = j.value("theta", 0.0);
  if (j.contains("backend")) p.backend = parse_backend(j.at("backend").get<std::string>());
  try {
    return build_standard_algebra(j.at("standard").get<std::string>(), p);
  } catch (const PreconditionError& e) {
    fail(e.what());
  }
}

StandardAlgebra parse_table(const Json& j) {
  const Backend b =
      j.contains("backend") ? parse_backend(j.at("backend").get<std::string>()) : scan_algebra_backend(j);
  std::vector<TableAlgebra::BasisElement> basis;
  std::map<std::string, int> index;
  for (const auto& e : field(j, "basis")) {
    std::string id = field(e, "id").get<std::string>();
    if (!index.emplace(id, static_cast<int>(basis.size())).second) fail("duplicate basis id '" + id + "'");
    basis.push_back({id, parity_of(e)});
  }
  const int n = static_cast<int>(basis.size());
  if (n == 0) fail("empty basis");
  auto idx = [&](const Json& id) {
    auto it = index.find(id.get<std::string>());
    if (it == index.end()) fail("unknown basis id '" + id.get<std::string>() + "'");
    return it->second;
  };
  auto local_coeffs = [&](const Json& m) {
    Coeffs c;
    for (const auto& [id, v] : m.items()) accumulate(c, BasisKey{idx(Json(id)), 0}, scalar_of(v, b));
    return c;
  };
  std::vector<Coeffs> table(static_cast<std::size_t>(n) * n);
  if (j.contains("products"))
    for (const auto& pr : j.at("products"))
      table[idx(field(pr, "left")) * n + idx(field(pr, "right"))] = local_coeffs(field(pr, "result"));
  StandardAlgebra out;
  try {
    out.algebra = TableAlgebra::create(j.value("kind", "table"), basis, local_coeffs(field(j, "unit")),
                                       std::move(table), b);
  } catch (const PreconditionError& e) {
    fail(std::string("invalid algebra: ") + e.what());
  }
  if (j.contains("derivations"))
    for (const auto& d : j.at("derivations")) {
      std::map<BasisKey, Coeffs> t;
      for (const auto& [id, img] : field(d, "action").items()) t[BasisKey{idx(Json(id)), 0}] = local_coeffs(img);
      out.derivations.push_back(
          SuperDerivation::from_table(field(d, "name").get<std::string>(), parity_of(d), out.algebra, std::move(t)));
    }
  if (j.contains("traces"))
    for (const auto& t : j.at("traces")) {
      auto values = std::make_shared<const Coeffs>(local_coeffs(field(t, "values")));
      out.traces.push_back(Functional{field(t, "name").get<std::string>(), parity_of(t), [values, b](const BasisKey& k) {
                                        auto it = values->find(k);
                                        return it == values->end() ? Scalar::zero(b) : it->second;
                                      }});
    }
  return out;
}

const SuperDerivation& find_derivation(const StandardAlgebra& a, const std::string& name) {
  for (const auto& d : a.derivations)
    if (d.name() == name) return d;
  fail("unknown derivation '" + name + "'");
}

std::vector<BasisKey> sample_window(const SuperAlgebra& alg, int radius) {
  std::vector<BasisKey> out;
  for (int m = -radius; m <= radius; ++m) {
    if (alg.contains({m, 0}) && !alg.contains({m, 1})) {
      out.push_back({m, 0});
      continue;
    }
    for (int n = -radius; n <= radius; ++n) out.push_back({m, n});
  }
  return out;
}

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(path.string() + ": " + e.what());
  }
}

Json resolve(const Json& j, const std::filesystem::path& base_dir) {
  if (j.is_string()) {
    std::filesystem::path p = j.get<std::string>();
    if (p.is_relative()) p = base_dir / p;
    return read_json_file(p);
  }
  return j;
}

StandardAlgebra parse_algebra(const Json& j) {
  if (!j.is_object()) fail("algebra spec must be an object");
  try {
    return j.contains("standard") ? parse_standard(j) : parse_table(j);
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("algebra spec: ") + e.what());
  }
}

LRPtr parse_lie_rinehart(const Json& j, const StandardAlgebra* acted) {
  try {
    std::optional<StandardAlgebra> base;
    if (j.contains("R") && !(j.at("R").is_string() && j.at("R").get<std::string>() == "ground_field"))
      base = parse_algebra(j.at("R"));
    Backend b = base ? base->algebra->backend() : acted ? acted->algebra->backend() : Backend::Rational;
    if (!base && j.contains("bracket")) {
      for (const auto& br : j.at("bracket"))
        if (br.contains("result")) scan_coeffs(br.at("result"), b);
    }
    std::vector<LBasisElement> basis;
    std::set<std::string> seen;
    for (const auto& e : field(j, "L_basis")) {
      std::string id = field(e, "id").get<std::string>();
      if (!seen.insert(id).second) fail("duplicate L basis id '" + id + "'");
      basis.push_back({id, parity_of(e)});
    }
    auto lr = std::make_shared<SuperLieRinehart>(base ? base->algebra : ground_field(b).algebra, basis);
    if (j.contains("bracket"))
      for (const auto& br : j.at("bracket")) {
        const std::string x = field(br, "left").get<std::string>();
        const std::string y = field(br, "right").get<std::string>();
        std::vector<std::pair<std::string, Coeffs>> value;
        for (const auto& [id, v] : field(br, "result").items()) {
          if (!seen.count(id)) fail("unknown L basis id '" + id + "'");
          if (v.is_object())
            value.emplace_back(id, coeffs_of(lr->base(), v));
          else
            value.emplace_back(id, Coeffs{{BasisKey{0, 0}, scalar_of(v, b)}});
        }
        if (!seen.count(x) || !seen.count(y)) fail("bracket refers to an unknown L basis id");
        if (base) {
          lr->set_bracket(x, y, value);
        } else {
          std::vector<std::pair<std::string, Scalar>> scal;
          for (auto& [id, c] : value) scal.emplace_back(id, c.empty() ? Scalar::zero(b) : c.begin()->second);
          lr->set_bracket_scalar(x, y, scal);
        }
      }
    if (j.contains("anchor")) {
      if (!base) fail("an anchor needs a base algebra R");
      for (const auto& [id, name] : j.at("anchor").items())
        lr->set_anchor(id, find_derivation(*base, name.get<std::string>()));
    }
    if (j.contains("action")) {
      if (!acted) fail("an action section needs an algebra to act on");
      for (const auto& [id, name] : j.at("action").items()) {
        if (!seen.count(id)) fail("action for unknown L basis id '" + id + "'");
        lr->set_action(id, find_derivation(*acted, name.get<std::string>()));
      }
    }
    lr->validate();
    return lr;
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("Lie-Rinehart spec: ") + e.what());
  }
}

ModulePtr parse_module(const Json& j, const SuperLieRinehart& lr) {
  if (j.is_string()) {
    if (j.get<std::string>() == "trivial") return trivial_module(lr);
    fail("unknown module '" + j.get<std::string>() + "'");
  }
  try {
    std::vector<std::string> names;
    std::vector<int> parities;
    std::map<std::string, std::size_t> index;
    for (const auto& e : field(j, "basis")) {
      index.emplace(field(e, "id").get<std::string>(), names.size());
      names.push_back(field(e, "id").get<std::string>());
      parities.push_back(parity_of(e));
    }
    const Backend b = lr.backend();
    auto m = std::make_shared<RightModule>(names, parities, b);
    auto at = [&](const std::string& id) {
      auto it = index.find(id);
      if (it == index.end()) fail("unknown module basis id '" + id + "'");
      return it->second;
    };
    if (j.contains("action"))
      for (const auto& [l, rows] : j.at("action").items()) {
        std::vector<SparseMatrix::Entry> entries;
        // m.X as a matrix on column vectors: entry (to, from).
        for (const auto& [from, img] : rows.items())
          for (const auto& [to, v] : img.items()) entries.push_back({at(to), at(from), scalar_of(v, b)});
        m->set_action(lr.index_of(l), SparseMatrix::from_entries(names.size(), names.size(), b, std::move(entries)));
      }
    if (m->compatibility_residual(lr) > 0.0) fail("module action is not compatible with the bracket");
    return m;
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("module spec: ") + e.what());
  }
}

PairingSetup parse_pairing_setup(const Json& j, const std::filesystem::path& base_dir) {
  try {
    PairingSetup s;
    s.target = parse_algebra(resolve(field(j, "algebra"), base_dir));
    const AlgebraPtr& B = s.target.algebra;
    if (j.contains("source")) s.source = parse_algebra(resolve(j.at("source"), base_dir));
    s.lr = parse_lie_rinehart(resolve(field(j, "lie_rinehart"), base_dir), &s.target);
    const int p = field(j, "p").get<int>();
    if (p < 0) fail("p must be nonnegative");

    std::vector<AlgebraElement> gens;
    if (j.contains("J_generators"))
      for (const auto& g : j.at("J_generators")) gens.emplace_back(B, coeffs_of(*B, g));

    const Json trace_sel = j.value("trace", Json("all"));
    std::vector<std::string> names;
    if (trace_sel.is_string() && trace_sel.get<std::string>() != "all") names.push_back(trace_sel.get<std::string>());
    if (trace_sel.is_array())
      for (const auto& t : trace_sel) names.push_back(t.get<std::string>());

    if (!B->is_finite()) {
      if (s.source || !gens.empty()) fail("countable algebras support only A = B = J");
      if (names.empty())
        for (const auto& t : s.target.traces) names.push_back(t.name);
      std::vector<BasisKey> samples;
      if (j.contains("samples"))
        for (const auto& k : j.at("samples")) samples.push_back(key_of(*B, k));
      else
        samples = sample_window(*B, 2);
      std::vector<PartialTrace> traces;
      const IdealPtr jp = whole_algebra(B, std::max(p, 1));
      for (const auto& n : names) traces.push_back(make_partial_trace(s.target.trace(n), jp));
      s.ctx = sampled_context(B, s.lr, p, traces, samples);
    } else if (s.source) {
      const AlgebraPtr& A = s.source->algebra;
      std::map<BasisKey, Coeffs> phi;
      for (const auto& [id, img] : field(j, "phi").items()) phi[key_of(*A, Json(id))] = coeffs_of(*B, img);
      s.ctx = mapped_context(A, B, std::move(phi), s.lr, gens, p);
    } else {
      s.ctx = inner_context(B, s.lr, gens, p);
    }
    if (B->is_finite() && !names.empty()) {
      std::vector<PartialTrace> traces;
      for (const auto& n : names) traces.push_back(make_partial_trace(s.target.trace(n), s.ctx.jp));
      s.ctx = with_functionals(s.ctx, traces);
    }
    for (const auto& t : s.ctx.traces.traces) s.trace_names.push_back(t.name());

    if (j.contains("lr_chain")) {
      LRChain c(s.lr, s.ctx.traces.module, p);
      for (const auto& term : j.at("lr_chain")) {
        const Json& t = field(term, "trace");
        std::size_t k = 0;
        if (t.is_number_integer()) {
          k = t.get<std::size_t>();
        } else {
          auto it = std::find(s.trace_names.begin(), s.trace_names.end(), t.get<std::string>());
          if (it == s.trace_names.end()) fail("unknown trace '" + t.get<std::string>() + "'");
          k = static_cast<std::size_t>(it - s.trace_names.begin());
        }
        if (k >= s.trace_names.size()) fail("trace index out of range");
        std::vector<int> word;
        for (const auto& id : field(term, "word")) word.push_back(s.lr->index_of(id.get<std::string>()));
        if (static_cast<int>(word.size()) != p) fail("lr_chain word length must equal p");
        c.add_word(k, word, scalar_of(term.value("coeff", Json("1")), B->backend()));
      }
      s.lr_chain = c;
    }
    if (j.contains("hochschild_chain")) {
      const AlgebraPtr& A = s.ctx.source;
      HochschildChain c(A, p);
      for (const auto& term : j.at("hochschild_chain")) {
        Tuple t;
        for (const auto& id : field(term, "tuple")) t.push_back(key_of(*A, id));
        if (static_cast<int>(t.size()) != p + 1) fail("hochschild_chain tuples must have p + 1 entries");
        c.add(t, scalar_of(term.value("coeff", Json("1")), A->backend()));
      }
      s.hochschild_chain = c;
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("pairing setup: ") + e.what());
  }
}

}  // namespace lrcyc
