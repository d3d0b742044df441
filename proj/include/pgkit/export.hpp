#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pgkit/axioms.hpp"
#include "pgkit/enumeration.hpp"
#include "pgkit/geometry.hpp"
#include "pgkit/symmetry.hpp"

namespace pgkit {

enum class EmitFormat { kTxt, kJson, kCoq };

// Naming scheme and section selection for emitted artifacts. The prefixes
// must yield pairwise-distinct identifiers (checked; "P"/"L"/"S"/"K" are safe
// because indices never make one name a prefix-extension of another scheme's).
struct EmissionConfig {
  EmitFormat format = EmitFormat::kJson;
  std::string point_prefix = "P";
  std::string line_prefix = "L";
  std::string spread_prefix = "S";
  std::string packing_prefix = "K";
  bool include_geometry = true;
  bool include_axioms = true;
  bool include_spreads = true;
  bool include_packings = true;
  bool include_timings = false;  // timings make bytes run-dependent; off by default
};

// One row per line in ascending line index, point indices ascending,
// single-space separated, newline-terminated. load_incidence of the result
// reproduces the geometry exactly.
std::string emit_incidence_txt(const Geometry& g);

// Proof-assistant source: inductive point/line declarations, the incidence
// function as a match grouped by line, spread/packing list definitions, and
// (when `skolem` is given) the witness functions f_a1 (joining line) and
// f_a3_3 (transversal line; table entries exist for ascending triples, the
// wildcard arm returns the first line). Line point lists are always emitted
// in ascending order. Throws Error when the naming scheme collides.
std::string emit_proof_source(const Geometry& g, const std::vector<Spread>& spreads,
                              const std::vector<Packing>& packings, const EmissionConfig& cfg,
                              const SkolemTables* skolem = nullptr);

// Grammar-level well-formedness of emitted proof source: statement structure,
// bracket and match/end balance, duplicate and unknown identifiers. Returns
// an empty list when the text is well-formed.
std::vector<std::string> validate_proof_source(const std::string& text);

nlohmann::ordered_json geometry_json(const Geometry& g);
nlohmann::ordered_json axiom_json(const AxiomReport& r, bool include_timings);
nlohmann::ordered_json orbit_json(const OrbitReport& r);
nlohmann::ordered_json witness_json(int from, int to, const Collineation* c);

// Combined document with stable field order: schema_version, generator,
// then the sections enabled in `cfg`.
nlohmann::ordered_json emit_json(const Geometry& g, const std::vector<AxiomReport>& reports,
                                 const std::vector<Spread>& spreads,
                                 const std::vector<Packing>& packings, const EmissionConfig& cfg);

}  // namespace pgkit
