#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace zdense {

using json = nlohmann::json;

/// Checks `doc` against a JSON Schema subset: type, enum, const, properties,
/// required, additionalProperties, items, prefixItems, minItems, maxItems,
/// minimum, maximum, pattern. Returns one message per violation, each
/// prefixed by a JSON pointer to the offending value.
std::vector<std::string> schema_violations(const json& schema, const json& doc);

/// Throws SchemaError listing every violation.
void validate_against_schema(const json& schema, const json& doc, const std::string& what);

/// Schemas compiled into the library from the repository's schemas/ directory.
const json& group_spec_schema();
const json& generator_set_schema();

}  // namespace zdense
