#pragma once

#include <stdexcept>
#include <string>

#include "shipland/simkit.hpp"

namespace shipland {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parses a sectioned key = value scenario file. Every omitted key keeps its
// default; unknown sections or keys are errors. Throws ConfigError with a
// line diagnostic on parse failures and std::invalid_argument on invariant
// violations.
ScenarioConfig parse_config_text(const std::string& text);
ScenarioConfig parse_config_file(const std::string& path);

// The full configuration in the same format parse_config_text accepts;
// serialize_config(parse_config_text(s)) round-trips.
std::string serialize_config(const ScenarioConfig& config);

}  // namespace shipland
