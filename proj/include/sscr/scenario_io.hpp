#pragma once

#include <string>

#include "sscr/geometry.hpp"

namespace sscr {

/// Parses and validates a scenario file (schema in docs/scenario_schema.md).
/// Boxes are expanded into their six facades. Unknown keys are rejected.
/// Throws ValidationError on malformed input or on the first violated
/// invariant.
Scenario load_scenario(const std::string& path);

/// Same as load_scenario but from an in-memory JSON string.
Scenario parse_scenario(const std::string& json_text);

/// Canonical serialization of a loaded scenario (sorted keys, boxes already
/// expanded). Loading the same file twice yields byte-identical output.
std::string canonical_json(const Scenario& scenario);

}  // namespace sscr
