#pragma once

// JSON and markdown forms of the pipeline's artifacts. Rationals are written
// as "p/q" strings (or "p" when q = 1).

#include "scheme_forge/geometry.hpp"
#include "scheme_forge/reconstruct.hpp"
#include "scheme_forge/relation_scheme.hpp"
#include "scheme_forge/scheme_params.hpp"
#include "scheme_forge/triple.hpp"

#include "json.hpp"

#include <string>

namespace scheme_forge {

using nlohmann::json;

json to_json(const SchemeParameters& params);
SchemeParameters params_from_json(const json& j);

/// P, Q, n, m and the p^k, q^k tables. When t is known, q^1..q^3 are shown
/// multiplied by t and q^4 as is; the heading of each table says which.
std::string to_markdown(const SchemeParameters& params);

json to_json(const RelationScheme& sch);
RelationScheme scheme_from_json(const json& j);

json to_json(const GQ& gq);
GQ gq_from_json(const json& j);

json to_json(const Hemisystem& h);
Hemisystem hemisystem_from_json(const json& j);

json triple_to_json(const TripleSolution& sol);
json vacuous_triple_json();

json to_json(const ReconstructedGQ& rec, const std::vector<Element>& U, const ValidationReport& checks);

json to_json(const ValidationReport& report);

} // namespace scheme_forge
