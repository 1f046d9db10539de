#pragma once

#include <iosfwd>
#include <string>

#include "dsoc/scenario.hpp"

namespace dsoc {

// Flat key = value scenario format, one setting per line, '#' comments.
// Doubles are written with round-trip precision. The full grammar is
// documented in the README.
void write_scenario(const ScenarioSpec& spec, std::ostream& out);
void write_scenario_file(const ScenarioSpec& spec, const std::string& path);

// Parses and validates a scenario; throws std::invalid_argument on unknown
// keys, malformed values or an invalid spec, std::runtime_error on I/O.
ScenarioSpec read_scenario(std::istream& in);
ScenarioSpec read_scenario_file(const std::string& path);

}  // namespace dsoc
