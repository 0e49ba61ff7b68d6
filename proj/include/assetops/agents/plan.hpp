#pragma once

#include <optional>
#include <string>
#include <vector>

#include "assetops/agents/intent.hpp"
#include "assetops/agents/specialists.hpp"

namespace assetops {

enum class NodeStatus { pending, completed, failed };

std::string_view to_string(NodeStatus s);

struct PlanNode {
    Subtask subtask;
    /// subtask_ids that must complete first.
    std::vector<std::string> deps;
    NodeStatus status = NodeStatus::pending;
    std::string artifact_id;
    SubtaskFailure failure = SubtaskFailure::none;
    std::string failure_detail;
    /// Every request is already covered by the store; the node can be
    /// completed from stored artifacts without routing.
    bool coverable = false;
    bool precompleted = false;
};

struct PlanState {
    std::vector<PlanNode> nodes;
    int revision = 0;
    /// Replanning gave up (revision bound exceeded).
    bool aborted = false;

    const PlanNode* find(const std::string& subtask_id) const;
    PlanNode* find(const std::string& subtask_id);
    std::size_t completed_count() const;
    /// All non-remedial nodes completed.
    bool succeeded() const;
    /// Throws ValidationError on a dependency cycle or an unknown dependency.
    void validate() const;
    Json to_json() const;
};

/// Replanning stops once the revision would exceed this bound.
inline constexpr int kMaxPlanRevisions = 3;

/// Instantiates the category template for every asset of the intent and
/// marks nodes whose requests the store fully covers as coverable.
///
///   fault diagnosis        DC(history, alerts) -> TS(anomaly) -> FR
///   predictive maint.      DC(history, alerts) -> TS(forecast, anomaly) -> FR
///   comparative analysis   DC(history) -> TS(anomaly), per asset
///   maintenance planning   DC(work orders 90d, alerts) -> TS(anomaly) -> FR -> MP
///   operational monitoring DC(two channels, alerts) -> TS(anomaly)
///   knowledge discovery    DC(site metadata)
///   system configuration   DC(site metadata, history)
///   full pipeline          DC(history, alerts, work orders 90d) -> TS(anomaly, forecast) -> FR -> MP
///
/// `window_end` anchors the 90-day work-order lookback.
PlanState plan_turn(const Intent& intent, const ArtifactStore& store, Timestamp window_end);

/// The flat template without coverage marks (used by the baseline).
PlanState plan_template(const Intent& intent, Timestamp window_end);

/// Index of the lowest pending node whose dependencies are all completed.
std::optional<std::size_t> route_next(const PlanState& state);

/// Artifact ids of the completed dependencies of a node, in dependency order.
std::vector<std::string> dependency_artifacts(const PlanState& state, const PlanNode& node);

/// Applies a specialist result to node `index`:
///  - success: mark completed;
///  - insufficient evidence: insert a remedial DC(alerts) over twice the
///    previous alert window ending at the same instant, wired in as a
///    dependency of the failed node, revision + 1; past kMaxPlanRevisions
///    the plan is aborted and the node failed;
///  - any other failure: mark failed.
/// `fleet_start` clamps widened windows. Returns true when the plan changed
/// shape (a node was inserted).
bool replan(PlanState& state, std::size_t index, const SpecialistResult& result, Timestamp fleet_start);

} // namespace assetops
