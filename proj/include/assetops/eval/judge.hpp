#pragma once

#include <map>
#include <string>
#include <vector>

#include "assetops/agents/planner.hpp"
#include "assetops/app/suite.hpp"
#include "assetops/eval/standardized.hpp"
#include "assetops/sim/fleet.hpp"

namespace assetops {

/// Expected outcome of one benchmark dialog.
struct GroundTruth {
    std::string dialog_id;
    Category category = Category::fault_diagnosis;
    std::vector<std::string> assets;
    std::vector<std::string> target_evidence;
    /// Ordered qualified tool names a correct first turn issues.
    std::vector<std::string> trajectory;
    /// Failure codes a complete answer names (empty when the category has no
    /// diagnosis step).
    std::vector<std::string> target_failure_codes;

    /// Throws ValidationError on unknown assets or tools.
    void validate(const sim::SyntheticFleet* fleet = nullptr) const;
    Json to_json() const;
    static GroundTruth from_json(const Json& j);
};

using GroundTruthSet = std::map<std::string, GroundTruth>;

Json ground_truth_to_json(const GroundTruthSet& set);
GroundTruthSet ground_truth_from_json(const Json& j);
GroundTruthSet load_ground_truth(const std::string& path);

/// Ground truth for a suite over a fleet: assets named in the scripts, the
/// category's reference trajectory and evidence, and the failure code of each
/// asset's most recent injected anomaly.
GroundTruthSet derive_ground_truth(const BenchmarkSuite& suite, const sim::SyntheticFleet& fleet);

/// Reference tool sequence and evidence kinds of a category's first turn.
const std::vector<std::string>& reference_trajectory(Category c);
const std::vector<std::string>& reference_evidence(Category c);

struct JudgeScores {
    double planning = 0.0;
    double tool_quality = 0.0;
    double completion = 0.0;

    Json to_json() const;
};

/// Scores one dialog. Throws on failure; the pipeline then skips and reports
/// the dialog.
class Judge {
public:
    virtual ~Judge() = default;
    virtual std::string name() const = 0;
    virtual JudgeScores score(const StandardizedDialog& dialog, const GroundTruth& truth) = 0;
};

/// Rounds to the nearest multiple of 0.05.
double quantize_score(double v);
/// Length of the longest common subsequence.
std::size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b);

/// Offline rubric over checkable features:
///   planning     = LCS(reference, first-turn tool order) / max(length)
///   tool quality = mean(name validity, schema compliance, 1 - redundant share)
///   completion   = mean(turn success rate, answer marker hit rate), capped at
///                  0.5 when a target failure code never appears
/// Every score is quantized to 0.05.
class ScriptedJudge final : public Judge {
public:
    std::string name() const override { return "scripted"; }
    JudgeScores score(const StandardizedDialog& dialog, const GroundTruth& truth) override;
};

/// Chat-completion judge configured from ASSETOPS_JUDGE_* variables. Replies
/// outside [0, 1] or without the three scores are failures.
class RemoteJudge final : public Judge {
public:
    explicit RemoteJudge(RemoteModelConfig cfg) : cfg_(std::move(cfg)) {}
    std::string name() const override { return "remote:" + cfg_.model; }
    JudgeScores score(const StandardizedDialog& dialog, const GroundTruth& truth) override;

private:
    RemoteModelConfig cfg_;
};

} // namespace assetops
