#pragma once

#include <mutex>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "assetops/core/types.hpp"

namespace assetops {

enum class Tier { llm, tool, db };

std::string_view to_string(Tier t);
Tier tier_from_string(std::string_view s);

enum class LlmPurpose { intent, plan, repair, synthesize, judge };

std::string_view to_string(LlmPurpose p);
LlmPurpose llm_purpose_from_string(std::string_view s);

/// Tier-1 record: one completion from the planner/judge backend.
struct LlmCallRecord {
    std::string model;
    std::int64_t prompt_tokens = 0;
    std::int64_t completion_tokens = 0;
    DurationMs latency_ms = 0;
    LlmPurpose purpose = LlmPurpose::plan;
};

/// Tier-2 payload: one dispatched tool invocation.
struct ToolEventInfo {
    std::string server;
    std::string tool;
    std::string status;
    std::string call_id;
};

/// Tier-3 payload: one database query inside a data server.
struct DbEventInfo {
    std::string server;
    std::string query_type;
    std::int64_t documents = 0;
    std::string error;
    std::string call_id;
};

struct ProfileEvent {
    Tier tier = Tier::llm;
    std::string dialog_id;
    int turn_index = 0;
    Timestamp started_at = 0;
    DurationMs latency_ms = 0;
    std::variant<LlmCallRecord, ToolEventInfo, DbEventInfo> detail;

    Timestamp ended_at() const noexcept { return started_at + latency_ms; }

    /// Event-log line: {tier, dialog_id, turn_index, started_at, latency_ms, payload}.
    Json to_json() const;
    static ProfileEvent from_json(const Json& j);
};

class EventSink {
public:
    virtual ~EventSink() = default;
    virtual void record(ProfileEvent event) = 0;
};

/// Collects events so a caller can forward them later in a chosen order.
class BufferSink final : public EventSink {
public:
    void record(ProfileEvent event) override {
        std::lock_guard lock(mu_);
        events_.push_back(std::move(event));
    }
    std::vector<ProfileEvent> take() {
        std::lock_guard lock(mu_);
        return std::exchange(events_, {});
    }
    void flush_to(EventSink& sink) {
        for (auto& e : take()) sink.record(std::move(e));
    }

private:
    std::mutex mu_;
    std::vector<ProfileEvent> events_;
};

/// Drops everything.
class NullSink final : public EventSink {
public:
    void record(ProfileEvent) override {}
};

} // namespace assetops
