#pragma once

#include <string>

#include "json.hpp"

#include "campana/approx.hpp"
#include "campana/orbifold.hpp"

namespace campana {

/// Orbifold descriptor: {"n": 2, "forms": [[1,0,0], ...], "multiplicities": [2, 3, "inf"]}.
/// "forms" may be omitted for the standard arrangement. Coefficients are JSON integers
/// or decimal strings. Unknown keys are rejected with std::invalid_argument.
HyperplaneOrbifold orbifold_from_json(const nlohmann::json& j);
HyperplaneOrbifold load_orbifold(const std::string& path);
nlohmann::json orbifold_to_json(const HyperplaneOrbifold& orbifold);

/// "p:y0,y1,...:N"
LocalTarget parse_target(const std::string& text);
/// "4,1" or "-3,0,7"
std::vector<Integer> parse_integer_list(const std::string& text);

nlohmann::json to_json(const ProjectivePoint& point);
nlohmann::json to_json(const Valuation& v);

}  // namespace campana
