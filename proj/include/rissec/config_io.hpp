#pragma once

#include "rissec/sysmodel.hpp"

#include <json.hpp>

#include <string>

namespace rissec {

nlohmann::json to_json(const SystemConfig& cfg);
// Unknown keys and mistyped values throw ConfigError; missing keys keep defaults.
SystemConfig config_from_json(const nlohmann::json& doc);
SystemConfig load_config(const std::string& path);

// Canonical form: every field present, keys sorted, shortest round-trip numbers.
std::string normalized_json(const SystemConfig& cfg);
std::string config_sha256(const SystemConfig& cfg);

}  // namespace rissec
