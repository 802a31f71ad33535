// SPDX-License-Identifier: Apache-2.0
// Group configuration files and the built-in presets.
#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "prophecke/propweyl.hpp"

namespace ph {

GroupConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const GroupConfig& c);
GroupConfig load_config_file(const std::string& path);
// A preset name or a path to a JSON file.
GroupConfig load_config(const std::string& name_or_path);
const std::vector<std::string>& preset_names();
bool is_preset(const std::string& name);
// Hex digest of the canonical serialization.
std::string config_digest(const GroupConfig& c);

}  // namespace ph
