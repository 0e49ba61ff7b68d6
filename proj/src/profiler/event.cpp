#include "assetops/profiler/event.hpp"

namespace assetops {

std::string_view to_string(Tier t) {
    switch (t) {
    case Tier::llm: return "llm";
    case Tier::tool: return "tool";
    case Tier::db: return "db";
    }
    return "unknown";
}

Tier tier_from_string(std::string_view s) {
    if (s == "llm") return Tier::llm;
    if (s == "tool") return Tier::tool;
    if (s == "db") return Tier::db;
    throw ValidationError("unknown profiling tier: " + std::string(s));
}

std::string_view to_string(LlmPurpose p) {
    switch (p) {
    case LlmPurpose::intent: return "intent";
    case LlmPurpose::plan: return "plan";
    case LlmPurpose::repair: return "repair";
    case LlmPurpose::synthesize: return "synthesize";
    case LlmPurpose::judge: return "judge";
    }
    return "unknown";
}

LlmPurpose llm_purpose_from_string(std::string_view s) {
    for (auto p : {LlmPurpose::intent, LlmPurpose::plan, LlmPurpose::repair,
                   LlmPurpose::synthesize, LlmPurpose::judge})
        if (to_string(p) == s) return p;
    throw ValidationError("unknown llm purpose: " + std::string(s));
}

Json ProfileEvent::to_json() const {
    Json payload;
    if (const auto* llm = std::get_if<LlmCallRecord>(&detail)) {
        payload = {{"model", llm->model},
                   {"prompt_tokens", llm->prompt_tokens},
                   {"completion_tokens", llm->completion_tokens},
                   {"purpose", to_string(llm->purpose)}};
    } else if (const auto* tool = std::get_if<ToolEventInfo>(&detail)) {
        payload = {{"server", tool->server},
                   {"tool", tool->tool},
                   {"status", tool->status},
                   {"call_id", tool->call_id}};
    } else if (const auto* db = std::get_if<DbEventInfo>(&detail)) {
        payload = {{"server", db->server},
                   {"query_type", db->query_type},
                   {"documents", db->documents},
                   {"error", db->error},
                   {"call_id", db->call_id}};
    }
    Json j;
    j["tier"] = to_string(tier);
    j["dialog_id"] = dialog_id;
    j["turn_index"] = turn_index;
    j["started_at"] = started_at;
    j["latency_ms"] = latency_ms;
    j["payload"] = std::move(payload);
    return j;
}

ProfileEvent ProfileEvent::from_json(const Json& j) {
    ProfileEvent e;
    e.tier = tier_from_string(j.at("tier").get<std::string>());
    e.dialog_id = j.at("dialog_id").get<std::string>();
    e.turn_index = j.at("turn_index").get<int>();
    e.started_at = j.at("started_at").get<Timestamp>();
    e.latency_ms = j.at("latency_ms").get<DurationMs>();
    const Json& p = j.at("payload");
    switch (e.tier) {
    case Tier::llm:
        e.detail = LlmCallRecord{p.at("model").get<std::string>(),
                                 p.at("prompt_tokens").get<std::int64_t>(),
                                 p.at("completion_tokens").get<std::int64_t>(), e.latency_ms,
                                 llm_purpose_from_string(p.at("purpose").get<std::string>())};
        break;
    case Tier::tool:
        e.detail = ToolEventInfo{p.at("server").get<std::string>(), p.at("tool").get<std::string>(),
                                 p.at("status").get<std::string>(),
                                 p.value("call_id", std::string{})};
        break;
    case Tier::db:
        e.detail = DbEventInfo{p.at("server").get<std::string>(),
                               p.at("query_type").get<std::string>(),
                               p.at("documents").get<std::int64_t>(),
                               p.value("error", std::string{}), p.value("call_id", std::string{})};
        break;
    }
    return e;
}

} // namespace assetops
