#pragma once

#include <string>

#include <json.hpp>

#include "confsym/enveloping.hpp"
#include "confsym/invariants.hpp"
#include "confsym/opalg.hpp"
#include "confsym/phase_poly.hpp"
#include "confsym/quantization.hpp"
#include "confsym/starproduct.hpp"
#include "confsym/symmetries.hpp"

namespace confsym {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Top-level document: body plus "schema_version" and "type".
Json document(const std::string& type, Json body);
// Checks schema_version (when present) and type; returns the document.
const Json& expect_document(const Json& doc, const std::string& type);
// Parses text; throws ParseError with the parser message.
Json parse_json(const std::string& text);
// Canonical serialization: sorted keys, two-space indentation.
std::string dump_json(const Json& doc);

Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json signature_to_json(const Signature& sig);
Signature signature_from_json(const Json& j);

// {"n", "terms": [{"x": [...], "p": [...], "coeff": "a/b"}]}.
Json poly_to_json(const PhasePoly& f);
PhasePoly poly_from_json(const Json& j);

// Terms carry "x", "p", "dx", "dp".
Json phase_op_to_json(const PhaseOp& a);
PhaseOp phase_op_from_json(const Json& j);

// {"lambda", "mu", "symbol"}.
Json diff_op_to_json(const DiffOp& a);
DiffOp diff_op_from_json(const Json& j);

Json contraction_to_json(const ContractionMono& m);
Json quant_map_to_json(const QuantMap& q);
Json classification_to_json(const Classification& c);
Json killing_basis_to_json(const KillingBasis& kb);
Json symmetry_pair_to_json(const SymmetryPair& s);
SymmetryPair symmetry_pair_from_json(const Json& j);
Json symmetry_check_to_json(const SymmetryCheck& c);

// Words are lists of generator labels.
Json env_to_json(const EnvElement& u);
EnvElement env_from_json(const Json& j);
Json kernel2_to_json(const Kernel2& k);

Json star_report_to_json(const StarReport& r);

}  // namespace confsym
