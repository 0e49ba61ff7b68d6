#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "assetops/eval/judge.hpp"
#include "assetops/eval/standardized.hpp"

namespace assetops {

struct ObjectiveOptions {
    /// Count never-dispatched calls (invalid name, schema violation) in the
    /// execution-success denominator.
    bool count_undispatched = true;
};

/// Micro-averaged call-level metrics. Absent when the denominator is empty.
struct ObjectiveMetrics {
    std::size_t calls = 0;
    std::size_t valid_names = 0;
    std::size_t schema_ok = 0;
    std::size_t executed_ok = 0;
    std::size_t dispatched = 0;
    std::optional<double> tool_name_validity;
    std::optional<double> schema_compliance;
    std::optional<double> execution_success;

    Json to_json() const;
};

ObjectiveMetrics eval_objective(const std::vector<StandardizedDialog>& dialogs, const ObjectiveOptions& options = {});

/// Share of dialogs with at least one recovery record whose turns all
/// succeed. Absent without such dialogs.
struct RecoveryMetrics {
    std::size_t dialogs_with_recovery = 0;
    std::size_t completed = 0;
    std::optional<double> recovery_success_rate;

    Json to_json() const;
};

RecoveryMetrics eval_recovery(const std::vector<StandardizedDialog>& dialogs);

struct DialogScore {
    std::string dialog_id;
    std::string category;
    JudgeScores scores;
};

struct CategoryScores {
    std::size_t dialogs = 0;
    double planning = 0.0;
    double tool_quality = 0.0;
    double completion = 0.0;
};

/// Macro-averaged judge scores with a per-category breakdown.
struct SubjectiveMetrics {
    std::string judge;
    std::vector<DialogScore> per_dialog;
    /// Dialogs the judge could not score, with the reason.
    std::vector<std::pair<std::string, std::string>> skipped;
    std::optional<double> planning_effectiveness;
    std::optional<double> tool_usage_quality;
    std::optional<double> task_completion;
    std::map<std::string, CategoryScores> per_category;

    Json to_json() const;
};

SubjectiveMetrics eval_subjective(const std::vector<StandardizedDialog>& dialogs, const GroundTruthSet& truths,
                                  Judge& judge);

struct EvalReport {
    std::string label;
    std::size_t dialogs = 0;
    ObjectiveMetrics objective;
    RecoveryMetrics recovery;
    SubjectiveMetrics subjective;
    /// Branch name to error message for branches that failed.
    std::map<std::string, std::string> branch_errors;

    Json to_json() const;
    static EvalReport from_json(const Json& j);
};

struct PipelineOptions {
    bool concurrent = true;
    ObjectiveOptions objective;
};

/// Runs the judge, call-level and recovery branches (concurrently by
/// default) and merges them. A failing branch leaves its fields absent.
EvalReport run_pipeline(const std::vector<StandardizedDialog>& dialogs, const GroundTruthSet& truths, Judge& judge,
                        const std::string& label, const PipelineOptions& options = {});

/// One row per report: Plan. Eff., Tool Qual., Task Comp., Name Val., Schema
/// Comp., Exec. Succ., Recovery SR.
std::string render_metrics_table(const std::vector<const EvalReport*>& reports);
/// Per-category P, T, C of `a` and `b` with delta = a - b.
std::string render_category_table(const EvalReport& a, const EvalReport& b);
/// Both tables for a pair plus a delta row (a - b).
std::string render_comparison(const EvalReport& a, const EvalReport& b);

} // namespace assetops
