#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "assetops/profiler/profiler.hpp"

namespace assetops {

struct RunSummary {
    Architecture architecture = Architecture::supervisor;
    double total_wall_minutes = 0.0;
    DurationMs total_wall_ms = 0;
    DurationMs total_llm_ms = 0;
    DurationMs total_tool_ms = 0;
    DurationMs total_routing_ms = 0;
    std::int64_t total_tokens = 0;
    std::int64_t total_llm_calls = 0;
    std::int64_t total_tool_calls = 0;
    std::int64_t turns = 0;
    std::vector<DialogProfile> dialogs;

    /// Ratio of totals; 0 for an empty run.
    double llm_share() const;
    double tool_share() const;
    double routing_share() const;

    Json to_json() const;
};

RunSummary summarize_run(Architecture architecture, std::vector<DialogProfile> profiles);

/// Average latency per dialog for every server seen in the run.
std::map<std::string, double> per_server_report(const RunSummary& run);

struct PromptStats {
    std::int64_t calls = 0;
    double mean_prompt_tokens = 0.0;
    std::int64_t p95_prompt_tokens = 0;
    DurationMs max_latency_ms = 0;
    double slow_call_rate = 0.0;
    DurationMs slow_threshold_ms = 10'000;

    Json to_json() const;
};

/// Nearest-rank percentile of unsorted values; 0 for no values.
std::int64_t percentile_nearest_rank(std::vector<std::int64_t> values, double pct);

/// Tier-1 statistics over the given events (other tiers are ignored).
PromptStats prompt_stats(const std::vector<ProfileEvent>& events, DurationMs slow_threshold_ms = 10'000);

struct TurnPositionReport {
    /// Mean duration by 1-based turn position across dialogs that reach it.
    std::map<int, double> mean_ms_by_position;
    /// Each dialog's mean over its turns 2..5 first, then the mean across
    /// dialogs that have any of those turns.
    std::optional<double> turns_2_to_5_ms;

    Json to_json() const;
};

TurnPositionReport turn_position_report(const RunSummary& run);

/// Aligned text renderings. Every table takes one entry per architecture.
std::string render_run_summary(const std::vector<RunSummary>& runs);
std::string render_decomposition(const std::vector<RunSummary>& runs);
std::string render_per_server(const std::vector<RunSummary>& runs);
std::string render_turn_positions(const std::vector<RunSummary>& runs);
std::string render_prompt_stats(const std::vector<std::pair<Architecture, PromptStats>>& stats);

} // namespace assetops
