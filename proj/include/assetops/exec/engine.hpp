#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "assetops/tools/registry.hpp"

namespace assetops {

struct Interval {
    Timestamp start = 0;
    Timestamp end = 0;
};

/// Length of the union of the intervals; overlaps count once. Intervals with
/// end <= start contribute nothing.
DurationMs busy_union(std::vector<Interval> intervals);

enum class ExecMode { sequential, parallel };

std::string_view to_string(ExecMode m);

struct RecoveryPolicy {
    int max_retries = 2;
    int repair_attempts = 1;
    DurationMs backoff_ms = 0;

    /// Throws ValidationError on negative fields.
    void validate() const;
};

enum class RecoveryAction { retry, argument_repair, replan_escalation };

std::string_view to_string(RecoveryAction a);
RecoveryAction recovery_action_from_string(std::string_view s);

struct RecoveryRecord {
    /// Id of the original (first) attempt.
    std::string call_id;
    std::vector<RecoveryAction> actions;
    ToolStatus final_status = ToolStatus::ok;

    Json to_json() const;
    static RecoveryRecord from_json(const Json& j);
};

struct ExecutionBatch {
    std::vector<ToolCall> calls;
    ExecMode mode = ExecMode::sequential;
    /// (from call_id, to call_id): `to` starts only after `from` finished.
    std::vector<std::pair<std::string, std::string>> edges;
};

/// Outcome of one submitted call after recovery.
struct CallOutcome {
    /// Every attempt in order; the last one is terminal. Retries and repairs
    /// get ids "<call_id>/a2", "<call_id>/a3", ...
    std::vector<ToolCall> attempts;
    ToolResult result;
    RecoveryRecord recovery;

    const ToolCall& final_call() const { return attempts.back(); }
    bool ok() const { return attempts.back().status == ToolStatus::ok; }
};

struct BatchResult {
    /// Submission order.
    std::vector<CallOutcome> outcomes;
    Timestamp started_at = 0;
    DurationMs wall_ms = 0;

    std::vector<ToolResult> results() const;
    std::vector<RecoveryRecord> records() const;
    bool all_ok() const;
};

/// Proposes a corrected call for an invalid one (wrong name or schema), or
/// nothing. Implementations account for their own time and tier-1 events.
using Repairer =
    std::function<std::optional<ToolCall>(const ToolCall& call, const std::vector<Violation>& violations)>;

struct ExecContext {
    ToolRegistry* registry = nullptr;
    Clock* clock = nullptr;
    EventSink* sink = nullptr;
    Repairer repairer;
    DurationMs call_budget_ms = 30'000;
};

/// Runs a batch with recovery.
///
/// Phase 1 (in submission order): validate each call, asking `repairer` for
/// at most policy.repair_attempts corrections; reserve 1 + max_retries
/// sequence numbers per dispatchable call.
/// Phase 2: dispatch. Sequential mode runs calls in list order; parallel mode
/// launches each dependency wave concurrently. Failed dispatches are retried
/// up to max_retries times, then escalated.
///
/// Under the virtual clock the clock advances once, by the batch wall time:
/// the sum of chain times (sequential) or the sum over waves of the longest
/// chain (parallel). Events reach ctx.sink in submission order.
///
/// Throws ValidationError for a cyclic or unknown-id dependency graph, or a
/// sequential batch whose list order contradicts an edge, before dispatching
/// anything.
BatchResult execute_batch(const ExecutionBatch& batch, const RecoveryPolicy& policy, const ExecContext& ctx);

/// Single call with recovery; a one-element sequential batch.
CallOutcome run_with_recovery(const ToolCall& call, const RecoveryPolicy& policy, const ExecContext& ctx);

} // namespace assetops
