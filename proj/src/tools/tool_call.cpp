#include "assetops/tools/tool_call.hpp"

namespace assetops {

std::string_view to_string(ToolStatus s) {
    switch (s) {
    case ToolStatus::ok: return "ok";
    case ToolStatus::invalid_name: return "invalid-name";
    case ToolStatus::schema_violation: return "schema-violation";
    case ToolStatus::execution_failure: return "execution-failure";
    case ToolStatus::timeout: return "timeout";
    }
    return "unknown";
}

ToolStatus tool_status_from_string(std::string_view s) {
    for (auto st : {ToolStatus::ok, ToolStatus::invalid_name, ToolStatus::schema_violation,
                    ToolStatus::execution_failure, ToolStatus::timeout})
        if (to_string(st) == s) return st;
    throw ValidationError("unknown tool status: " + std::string(s));
}

Json ToolCall::to_json() const {
    Json j;
    j["call_id"] = call_id;
    j["dialog_id"] = dialog_id;
    j["turn_index"] = turn_index;
    j["server"] = server;
    j["tool"] = tool;
    j["args"] = args;
    j["status"] = to_string(status);
    j["latency_ms"] = latency_ms;
    j["started_at"] = started_at;
    j["error_detail"] = error_detail ? Json(*error_detail) : Json(nullptr);
    return j;
}

ToolCall ToolCall::from_json(const Json& j) {
    ToolCall c;
    c.call_id = j.at("call_id").get<std::string>();
    c.dialog_id = j.value("dialog_id", std::string{});
    c.turn_index = j.value("turn_index", 0);
    c.server = j.at("server").get<std::string>();
    c.tool = j.at("tool").get<std::string>();
    c.args = j.value("args", Json::object());
    c.status = tool_status_from_string(j.at("status").get<std::string>());
    c.latency_ms = j.value("latency_ms", DurationMs{0});
    c.started_at = j.value("started_at", Timestamp{0});
    if (j.contains("error_detail") && j["error_detail"].is_string())
        c.error_detail = j["error_detail"].get<std::string>();
    return c;
}

ToolResult ToolResult::make(std::string call_id, Json payload) {
    ToolResult r;
    r.call_id = std::move(call_id);
    r.payload_chars = payload.is_null() ? 0 : static_cast<std::int64_t>(payload.dump().size());
    r.payload = std::move(payload);
    return r;
}

} // namespace assetops
