/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include "wsq/structures.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <string_view>

namespace wsq {

/// Structure file layout:
///
///   {"universe": ["a", "b"],
///    "relations": {"E": {"arity": 2, "tuples": [["a","b"]]}},
///    "weights":   {"wt": {"arity": 2, "values": [{"tuple": ["a","b"], "value": "3/2"}]}}}
///
/// bot is expressed by omission.  Values are strings ("p/q", "d.ddd", integers)
/// or JSON integers.  All load errors throw StructureError.
WeightedStructure structure_from_json(const nlohmann::json &j);
nlohmann::json structure_to_json(const WeightedStructure &s);

WeightedStructure parse_structure(std::string_view text);
std::string serialize_structure(const WeightedStructure &s);

WeightedStructure load_structure(const std::filesystem::path &path);
void save_structure(const WeightedStructure &s, const std::filesystem::path &path);

/// Reads a whole file; throws StructureError if unreadable.
std::string read_file(const std::filesystem::path &path);

/// Parses a weight value as stored in files; throws StructureError.
ExtRational value_from_json(const nlohmann::json &v, const std::string &where);

} // namespace wsq
