#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "assetops/artifacts/store.hpp"
#include "assetops/exec/engine.hpp"

namespace assetops {

struct Subtask {
    std::string subtask_id;
    Specialist specialist = Specialist::data_collection;
    std::string goal;
    std::vector<EvidenceRequest> requests;
    /// Artifact ids produced by earlier subtasks.
    std::vector<std::string> inputs;
    /// Inserted by replanning rather than by the category template.
    bool remedial = false;

    Json to_json() const;
    static Subtask from_json(const Json& j);
};

/// The tool call that answers a data or time-series evidence request.
/// Throws ValidationError for kinds that are not fetched directly.
ToolCall call_for_request(const EvidenceRequest& request);

/// Everything a specialist needs for one turn.
struct SpecialistContext {
    std::string dialog_id;
    int turn_index = 1;
    ArtifactStore* store = nullptr;
    ExecContext exec;
    RecoveryPolicy policy;
    ExecMode mode = ExecMode::sequential;
    /// Produces unique call ids within the dialog.
    std::function<std::string()> next_call_id;
    /// Optional hook to rewrite planned calls before execution (used by the
    /// baseline's argument perturbation knob).
    std::function<void(ToolCall&)> mutate_call;
};

enum class SubtaskFailure { none, insufficient_evidence, tool_failure, missing_input };

std::string_view to_string(SubtaskFailure f);

struct SpecialistResult {
    /// Id of the artifact put into the store; empty on failure.
    std::string artifact_id;
    SubtaskFailure failure = SubtaskFailure::none;
    std::string failure_detail;
    /// Every executed chain in submission order (all attempts inside).
    std::vector<CallOutcome> calls;
    /// Raw payloads of successful fresh calls, for context accounting.
    std::vector<Json> fresh_payloads;
    DurationMs batch_wall_ms = 0;
    bool ok() const noexcept { return failure == SubtaskFailure::none; }
};

/// Retrieves sensor history, alerts, work orders and site metadata: reuse
/// what the store covers, fetch only the gaps in one batch, merge everything
/// into one artifact.
SpecialistResult run_data_collection(const Subtask& subtask, SpecialistContext& ctx);

/// Forecasts and anomaly scores against the TSFM server, same reuse rule.
SpecialistResult run_time_series(const Subtask& subtask, SpecialistContext& ctx);

/// Links anomalous observations to failure codes: candidates from coded
/// alerts and corrective work orders inside the anomalous window, ranked by
/// (corroborating records desc, most recent desc, code asc), described via
/// FMSR. Fails with insufficient_evidence when no candidate exists.
SpecialistResult run_failure_reasoning(const Subtask& subtask, SpecialistContext& ctx);

/// Turns the highest-confidence failure-code artifact into a plan: the
/// catalog action verbatim plus the most relevant work order of the last 90
/// days, if any.
SpecialistResult run_maintenance_planning(const Subtask& subtask, SpecialistContext& ctx);

SpecialistResult run_specialist(const Subtask& subtask, SpecialistContext& ctx);

/// Minimum anomaly score treated as abnormal (a three-sigma deviation).
inline constexpr double kAnomalyThreshold = 0.5;

/// confidence = min(0.95, 0.5 + 0.1 * evidence_count)
double failure_confidence(int evidence_count);

/// One-line human summary of an artifact used in planner context and answers.
std::string summarize_artifact(const Artifact& a);

} // namespace assetops
