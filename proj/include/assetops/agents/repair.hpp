#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "assetops/tools/tool_schema.hpp"

namespace assetops {

/// Edit distance, used to map a hallucinated name onto a catalog name.
std::size_t levenshtein(std::string_view a, std::string_view b);

/// Rule-based argument repair against the catalog:
///  - unknown tool name: nearest tool of the same server by edit distance
///    (any server when the server itself is unknown), arguments carried over;
///  - numeric strings for integer/real params are converted;
///  - an unknown param is renamed to the closest missing required param, or
///    dropped when nothing is missing.
/// Returns nullopt when no rule changes the call.
std::optional<ToolCall> scripted_repair(const ToolCatalog& catalog, const ToolCall& call,
                                        const std::vector<Violation>& violations);

} // namespace assetops
