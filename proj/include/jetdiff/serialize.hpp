#pragma once

#include <json.hpp>

#include "jetdiff/poly.hpp"

namespace jetdiff {

using Json = nlohmann::ordered_json;

Json to_json(const Rational& r);
Rational rational_from_json(const Json& j);

/// {"vars": [...], "terms": [[[e0, e1, ...], "p/q"], ...]} with terms in
/// ascending lexicographic exponent order.
Json to_json(const SparsePoly& p);
/// Reuses `table` when given and its names match the document.
SparsePoly poly_from_json(const Json& j, VarTablePtr table = nullptr);

}  // namespace jetdiff
