#pragma once

#include <string>
#include <string_view>

#include "progeny/forest.hpp"

namespace progeny {

enum class ForestFormat { Json, Text };

/// Accepts either format:
///   text: `n=<int>` then one `child parent` line per edge; `#` starts a comment
///   JSON: {"n": int, "parent": [int|null, ...]}
/// Throws Error{SyntaxError}, Error{IndexOutOfRange} or Error{CycleDetected}.
Forest parse_forest(std::string_view text);

std::string emit_forest(const Forest& forest, ForestFormat format = ForestFormat::Json);

/// Reads a forest from a file, or from stdin when `path` is "-".
Forest read_forest_file(const std::string& path);

std::string read_text_file(const std::string& path);

}  // namespace progeny
