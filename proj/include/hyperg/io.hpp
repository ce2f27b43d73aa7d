#pragma once

#include <string>

#include "hyperg/hypergroup.hpp"

namespace hyperg {

/// Document schema (JSON): { "name": str, "order": int,
///   "involution": [int...], "constants": [[[num|"p/q"...]...]...],
///   "metadata": { "family": str, "params": {str: num} }? }
/// Constants may be exact-rational strings "p/q", evaluated before conversion.
/// Element 0 must be the identity; re-indexing is the producer's job.

/// Parses a JSON document text. Axiom failures surface as
/// HyperError(AxiomViolation) carrying the full report summary.
FiniteHypergroup parse_hypergroup(const std::string& json_text, double tol = 1e-9);

/// Loads from a file path, or from the registry via "preset:NAME".
FiniteHypergroup load_hypergroup(const std::string& path_or_preset, double tol = 1e-9);

/// Canonical document emission: sorted keys, floats at 17 significant digits,
/// LF line endings. load(emit(K)) reproduces the tensor bit-exactly.
std::string emit_hypergroup(const FiniteHypergroup& k);

/// FNV-1a 64 hash of the canonical form of (order, involution, constants).
std::string tensor_digest(const FiniteHypergroup& k);

}  // namespace hyperg
