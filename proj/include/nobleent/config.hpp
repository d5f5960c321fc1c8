#pragma once

// JSON experiment configuration. Sections: species, cell, probe, pump, rates,
// field. Quantities accept one of several unit-suffixed keys (e.g.
// temperature_c or temperature_k) and are converted to internal units here.

#include <filesystem>
#include <string>

#include "nobleent/params.hpp"

namespace nobleent {

/// Throws ParseError (malformed JSON, unknown or duplicate keys),
/// ValidationError (with field path) or UnsupportedPair.
PhysicalConfig parse_config_text(const std::string& text);
PhysicalConfig parse_config(const std::filesystem::path& path);

/// Canonical JSON in internal units with sorted keys; parses back to an identical config.
std::string serialize_config(const PhysicalConfig& config);

/// SHA-256 of serialize_config, lowercase hex.
std::string config_digest(const PhysicalConfig& config);

/// An existing file path is returned as is; otherwise `name` (with or without
/// .json) is looked up among the shipped configs.
std::filesystem::path resolve_config_path(const std::string& name);

}  // namespace nobleent
