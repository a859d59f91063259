#pragma once

#include <string>

#include <json.hpp>

#include "stralg/gridform.hpp"
#include "stralg/trigform.hpp"

namespace stralg {

using nlohmann::json;

// Schema: {"frame":{"n":..},"degree":..,"m":..,"entries":[{"blade":[..],
// "mode":[..],"re":[[..]],"im":[[..]]}]}. Blade indices are 1-based over the
// complex covector basis (1..n = dz, n+1..2n = dzbar).
json to_json(const TrigForm& a);
TrigForm trigform_from_json(const json& j,
                            std::size_t mode_cap = 100000);

json to_json(const GridForm& a);
GridForm gridform_from_json(const json& j,
                            std::size_t mode_cap = 100000);

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

}  // namespace stralg
