#pragma once

#include "zdense/group_spec.hpp"
#include "zdense/schema.hpp"

#include <filesystem>

namespace zdense {

/// Validates against the group spec schema, then deserializes. Bracket
/// entries [i, j, k, "a/b"] are 1-based; the antisymmetric partner [j, i, k]
/// is filled in unless it is listed explicitly. Throws SchemaError.
GroupSpec group_spec_from_json(const json& doc);

json group_spec_to_json(const GroupSpec& spec);

GroupSpec load_group_spec(const std::filesystem::path& path);

/// Reads a whole file; throws Error when it cannot be opened.
std::string read_file(const std::filesystem::path& path);

}  // namespace zdense
