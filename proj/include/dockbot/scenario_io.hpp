#pragma once

// Scenario files: one JSON document, SI units and radians throughout.
// Unknown keys are rejected; every error carries a JSON pointer to the
// offending value.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dockbot/scenario.hpp"

namespace dockbot {

/// `key` is a dotted path into the document ("docking.k_lateral",
/// "path.waypoints.1"); `value` is a JSON literal, a bare string, or a number
/// with a "deg" suffix (converted to radians).
struct Override {
  std::string key;
  std::string value;
};

/// Splits "KEY=VALUE". Throws ConfigError when there is no '='.
Override parse_override(std::string_view text);

/// Splits "KEY=a,b,c" into one override per value.
std::vector<Override> parse_sweep(std::string_view text);

Scenario parse_scenario(std::string_view json_text, const std::vector<Override>& overrides = {});

std::string read_text_file(const std::filesystem::path& file);

Scenario load_scenario(const std::filesystem::path& file, const std::vector<Override>& overrides = {});

}  // namespace dockbot
