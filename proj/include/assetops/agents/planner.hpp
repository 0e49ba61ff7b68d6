#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "assetops/profiler/event.hpp"
#include "assetops/sim/latency.hpp"

namespace assetops {

/// One planner consultation. `proposal` is the rule engine's answer; a model
/// backend may replace it with its own decision when `accept` approves.
struct PlannerRequest {
    LlmPurpose purpose = LlmPurpose::plan;
    Json context;
    Json proposal;
    std::function<bool(const Json&)> accept;
};

struct PlannerReply {
    Json decision;
    LlmCallRecord record;
    /// Latency already elapsed in real time (remote backends). Otherwise the
    /// caller lets record.latency_ms pass on its clock.
    bool measured = false;
    bool from_model = false;
};

class Planner {
public:
    virtual ~Planner() = default;
    virtual std::string model() const = 0;
    virtual PlannerReply complete(const PlannerRequest& request) = 0;
};

/// Deterministic default: returns the proposal. Token counts are
/// estimate_tokens of the serialized context and proposal; latency comes from
/// the planner latency model.
class ScriptedPlanner final : public Planner {
public:
    explicit ScriptedPlanner(sim::PlannerLatencyModel latency = {}) : latency_(latency) {}
    std::string model() const override { return "scripted-planner"; }
    PlannerReply complete(const PlannerRequest& request) override;

private:
    sim::PlannerLatencyModel latency_;
};

struct RemoteModelConfig {
    std::string base_url; // e.g. http://localhost:8000/v1
    std::string model;
    std::string api_key;
    int timeout_ms = 120'000;

    /// Reads <prefix>_BASE_URL, <prefix>_MODEL and <prefix>_API_KEY.
    /// Throws ConfigError when the base URL or model is missing.
    static RemoteModelConfig from_env(const std::string& prefix = "ASSETOPS_LLM");
};

/// Minimal chat-completions client. Returns {content, prompt_tokens,
/// completion_tokens}; throws Error on transport or protocol failures.
struct ChatCompletion {
    std::string content;
    std::int64_t prompt_tokens = 0;
    std::int64_t completion_tokens = 0;
};
ChatCompletion chat_complete(const RemoteModelConfig& cfg, const std::string& system, const std::string& user);

/// Chat-completion backed planner. The model sees the context and the rule
/// proposal and must answer with JSON; anything unparsable or rejected by
/// `accept` falls back to the proposal. Token usage comes from the provider.
class RemotePlanner final : public Planner {
public:
    explicit RemotePlanner(RemoteModelConfig cfg) : cfg_(std::move(cfg)) {}
    std::string model() const override { return cfg_.model; }
    PlannerReply complete(const PlannerRequest& request) override;

private:
    RemoteModelConfig cfg_;
};

} // namespace assetops
