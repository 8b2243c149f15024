#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lrcyc/pairing.hpp"
#include "lrcyc/report.hpp"
#include "lrcyc/standard_algebras.hpp"

namespace lrcyc {

/// Reads a JSON file; ParseError on I/O or syntax problems.
Json read_json_file(const std::filesystem::path& path);

/// Algebra spec: either {"standard": kind, "n", "n0", "n1", "theta", "backend"}
/// or the table format with "basis", "unit", "products", "derivations",
/// "traces" (and optional "backend"; otherwise the widest backend among the
/// scalar strings). Unknown ids and malformed scalars raise ParseError.
StandardAlgebra parse_algebra(const Json& j);

/// Lie-Rinehart spec: "L_basis", "bracket", "R" ("ground_field" or an
/// algebra spec), "anchor" {L-id: derivation of R}, "action" {L-id:
/// derivation of `acted`}. Without an action section `acted` may be null.
LRPtr parse_lie_rinehart(const Json& j, const StandardAlgebra* acted);

/// Module spec: "trivial" or {"basis": [{"id","parity"}], "action":
/// {L-id: {from-id: {to-id: scalar}}}}, rows acting on the right.
ModulePtr parse_module(const Json& j, const SuperLieRinehart& lr);

/// Everything a pairing setup file describes. Relative paths inside the
/// file are resolved against `base_dir`.
struct PairingSetup {
  StandardAlgebra target;
  std::optional<StandardAlgebra> source;
  LRPtr lr;
  PairingContext ctx;
  std::vector<std::string> trace_names;
  /// Optional chains for `pair`.
  std::optional<LRChain> lr_chain;
  std::optional<HochschildChain> hochschild_chain;
};

/// Keys: "algebra" (spec or path), optional "source" and "phi" {A-id: {B-id:
/// scalar}}, "lie_rinehart" (spec or path), "J_generators" [{id: scalar}]
/// (empty or absent: J = B), "p", "trace": "all" | name | [names] (names
/// refer to the algebra's traces; "all" is the full partial-trace space),
/// optional "lr_chain" [{"trace", "word", "coeff"}] and "hochschild_chain"
/// [{"tuple", "coeff"}].
PairingSetup parse_pairing_setup(const Json& j, const std::filesystem::path& base_dir);

/// JSON value that is either an inline object or a path string.
Json resolve(const Json& j, const std::filesystem::path& base_dir);

}  // namespace lrcyc
