#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "beablesim/scenario.hpp"

namespace beablesim {

class ScenarioParseError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parse a scenario document. Unknown keys are rejected; errors carry the
/// offending key path or parse position.
Scenario parse_scenario(const std::string& text, const std::string& origin = "<string>");

Scenario load_scenario(const std::filesystem::path& path);

}  // namespace beablesim
