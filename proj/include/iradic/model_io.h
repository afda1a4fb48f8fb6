/// @file
/// Reading and writing the JSON model file.
#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "iradic/model.h"

namespace iradic {

/// Parses a model file. Unknown keys, duplicate ids, malformed numbers and
/// unresolved references are errors (ParseError / ReferenceError).
/// Range rules (probabilities, k-of-n bounds, cycles) are left to
/// validate_model so that they can be reported together.
Model parse_model(std::string_view text);

/// Canonical writer. parse_model(render_model(m)) == m.
std::string render_model(const Model& model);

Model load_model(const std::filesystem::path& path);

/// Writes via a temporary file and rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace iradic
