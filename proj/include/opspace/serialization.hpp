#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "opspace/classify.hpp"
#include "opspace/level_norms.hpp"
#include "opspace/spaces.hpp"

namespace opspace {

// Insertion-ordered JSON keeps emitted reports byte-stable run to run.
using json = nlohmann::ordered_json;

inline constexpr const char* schema_tag = "opspace/1";

// Shortest round-trip decimal form of a double (std::to_chars).
std::string double_to_string(double value);

// {"rows": r, "cols": c, "data": [[re, im], ...]} in row-major order.
json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);

// An element is an array of matrix objects, one per component.
json element_to_json(const Element& e);
Element element_from_json(const json& j);

json basis_to_json(const OperatorBasis& basis);
OperatorBasis basis_from_json(const json& j);

// Accepts a full basis object, or a bare array whose items are either
// matrix objects or arrays of matrix objects.
std::vector<Element> family_from_json(const json& j);

json invariants_to_json(const FamilyInvariants& inv);
json tro_report_to_json(const TroReport& report);
json classification_to_json(const ClassificationReport& report);
json estimate_to_json(const CbEstimate& est);
json distance_table_to_json(const DistanceTable& table);

// One header line plus one row per estimate; columns
// pair,n,forward_lower,inverse_lower,product_lower,closed_form[,divergent].
std::string estimate_to_csv(const std::string& pair, int n, const CbEstimate& est);
std::string distance_table_to_csv(const DistanceTable& table);

} // namespace opspace
