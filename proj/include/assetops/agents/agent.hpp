#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "assetops/agents/intent.hpp"
#include "assetops/agents/plan.hpp"
#include "assetops/agents/planner.hpp"
#include "assetops/core/dialog.hpp"
#include "assetops/profiler/profiler.hpp"
#include "assetops/sim/latency.hpp"
#include "assetops/tools/registry.hpp"

namespace assetops {

/// Shared machinery of one run. All pointers must outlive the agents.
struct AgentEnv {
    ToolRegistry* registry = nullptr;
    Clock* clock = nullptr;
    Profiler* profiler = nullptr;
    Planner* planner = nullptr;
    TurnCounter* turn_counter = nullptr;
    sim::LatencyConfig latency;
    RecoveryPolicy policy;
    /// Telemetry window; relative phrases anchor to its end.
    TimeRange data_window{0, 1};
    std::uint64_t seed = 7;
    /// Baseline only: per-dialog probability that one planned call carries a
    /// hallucinated name or argument.
    double hallucination_rate = 0.25;

    void validate() const;
};

/// Streamed stage events of a turn: {"type": "intent" | "routing" |
/// "tool_call" | "final_text", ...}.
using TurnObserver = std::function<void(const Json&)>;

/// Compact per-turn summary for terminals and the service.
struct TurnSummary {
    int index = 0;
    bool success = false;
    DurationMs duration_ms = 0;
    int tool_calls = 0;
    int artifacts_reused = 0;
    int artifacts_total = 0;
    std::vector<std::string> artifact_ids;
};

class DialogAgent {
public:
    virtual ~DialogAgent() = default;

    const DialogSession& session() const noexcept { return session_; }
    const ArtifactStore& store() const noexcept { return store_; }

    /// Runs one turn end to end. Failures become degraded answers; only
    /// invariant violations throw.
    virtual Turn run_turn(const std::string& user_text, const TurnObserver& observer = {}) = 0;
    /// Rollout in this architecture's log shape. Throws ValidationError for a
    /// session without turns.
    virtual Json rollout() const = 0;

    const std::vector<TurnSummary>& summaries() const noexcept { return summaries_; }
    const std::vector<Intent>& intents() const noexcept { return intents_; }

protected:
    DialogAgent(AgentEnv& env, std::string dialog_id, Category category, Architecture arch, bool reuse);

    struct Consult {
        Json decision;
        DurationMs latency_ms = 0;
    };
    /// One planner consultation: lets its latency pass on the clock and
    /// records the tier-1 event.
    Consult consult(LlmPurpose purpose, const Json& context, const Json& proposal,
                    std::function<bool(const Json&)> accept = {});
    /// Repairer wired to the planner (purpose repair) and the catalog rules.
    Repairer make_repairer();
    SpecialistContext specialist_context(ExecMode mode);
    Turn finish_turn(Timestamp started_at, std::string answer, bool success, TurnSummary summary,
                     const TurnObserver& observer);

    AgentEnv& env_;
    DialogSession session_;
    ArtifactStore store_;
    std::vector<TurnSummary> summaries_;
    std::vector<Intent> intents_;
    int call_counter_ = 0;
    int current_turn_ = 0;
};

/// Supervisor-specialist orchestration, optionally with parallel batches.
std::unique_ptr<DialogAgent> make_supervisor(AgentEnv& env, std::string dialog_id, Category category,
                                             bool parallel);
/// Plan-execute baseline: no reuse, sequential, one plan per turn, unbounded
/// transcript context.
std::unique_ptr<DialogAgent> make_baseline(AgentEnv& env, std::string dialog_id, Category category);
std::unique_ptr<DialogAgent> make_agent(AgentEnv& env, Architecture arch, std::string dialog_id, Category category);

} // namespace assetops
