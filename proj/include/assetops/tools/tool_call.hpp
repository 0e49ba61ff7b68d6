#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "assetops/core/types.hpp"

namespace assetops {

enum class ToolStatus { ok, invalid_name, schema_violation, execution_failure, timeout };

std::string_view to_string(ToolStatus s);
ToolStatus tool_status_from_string(std::string_view s);

/// One attempted tool invocation. Each retry or repaired attempt is its own
/// ToolCall with a distinct call_id.
struct ToolCall {
    std::string call_id;
    std::string dialog_id;
    int turn_index = 0;
    std::string server;
    std::string tool;
    Json args = Json::object();
    ToolStatus status = ToolStatus::ok;
    DurationMs latency_ms = 0;
    Timestamp started_at = 0;
    std::optional<std::string> error_detail;

    std::string qualified_name() const { return server + "." + tool; }

    Json to_json() const;
    static ToolCall from_json(const Json& j);
};

struct ToolResult {
    std::string call_id;
    Json payload;
    std::int64_t payload_chars = 0;

    static ToolResult make(std::string call_id, Json payload);
};

} // namespace assetops
