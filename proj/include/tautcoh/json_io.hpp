#pragma once

#include <string>

#include <json.hpp>

#include "tautcoh/cech.hpp"
#include "tautcoh/matroid.hpp"

namespace tautcoh {

using Json = nlohmann::ordered_json;

/// {"field": "Q" | "Fp", "p": 3, "matrix": [["1", "-2/3"], [0, 1]]}
/// Entries may be integers or rational strings. Throws InputError.
Realization realization_from_json(const Json& j);
Json realization_to_json(const Realization& L);

Realization load_realization(const std::string& path);

Json field_to_json(Field f);
Json report_to_json(const CohomologyReport& r);

/// Writes `j` (pretty printed) to `path`; "-" means stdout.
void write_json(const Json& j, const std::string& path);

}  // namespace tautcoh
