#pragma once

#include <filesystem>
#include <string_view>

#include <gaitadapt/simulator.hpp>

namespace gaitadapt
{

/// Parses a scenario file. Lines are `key = value` (gait, geometry and run
/// settings), `obstacle x_start x_end height` or `sensor_offset value`; `#`
/// starts a comment. Unknown keys, repeated keys and malformed numbers throw
/// ParseError with the line number; an invalid terrain throws InvalidScenario.
/// Settings that are not given keep their defaults.
Scenario parseScenario(std::string_view text);

/// Reads and parses a file. Throws IoError when it cannot be read.
Scenario loadScenario(const std::filesystem::path & path);

} // namespace gaitadapt
