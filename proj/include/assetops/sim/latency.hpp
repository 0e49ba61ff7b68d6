#pragma once

#include <map>
#include <string>

#include "assetops/core/types.hpp"

namespace assetops::sim {

/// Per-server service-time model. A sample is
/// base + jitter_draw + per_point * result_size, with jitter_draw uniform in
/// [0, jitter_ms] and both jitter and faults drawn from (seed, server,
/// sequence) so any call sequence replays exactly.
struct LatencyModel {
    DurationMs base_ms = 0;
    DurationMs jitter_ms = 0;
    double per_point_ms = 0.0;
    double fault_rate = 0.0;

    DurationMs sample(std::uint64_t seed, std::string_view server, std::uint64_t sequence,
                      std::int64_t result_size) const;
    bool fails(std::uint64_t seed, std::string_view server, std::uint64_t sequence) const;

    Json to_json() const;
    static LatencyModel from_json(const Json& j);
};

/// Synthetic tier-1 latency for the scripted planner:
/// base + per_kb * prompt_kib + per_completion_token * completion_tokens.
struct PlannerLatencyModel {
    DurationMs base_ms = 800;
    double per_kb_ms = 50.0;
    double per_completion_token_ms = 0.0;

    DurationMs sample(std::int64_t prompt_bytes, std::int64_t completion_tokens) const;
};

/// Everything that shapes simulated time in a run.
struct LatencyConfig {
    std::string name = "fast";
    std::map<std::string, LatencyModel> servers;
    PlannerLatencyModel planner;
    /// One-time cost charged to the first supervisor turn of a dialog.
    DurationMs setup_ms = 0;
    /// Charged per routing decision inside a supervisor turn.
    DurationMs routing_overhead_ms = 0;
    DurationMs call_budget_ms = 30'000;

    const LatencyModel& server(std::string_view name) const;

    Json to_json() const;
    /// Throws ConfigError on negative values, out-of-range fault rates or
    /// unknown keys.
    static LatencyConfig from_json(const Json& j);

    static LatencyConfig fast();
    static LatencyConfig paper_shape();
    /// "fast", "paper-shape", or a path to a JSON file.
    static LatencyConfig load(const std::string& name_or_path);
};

} // namespace assetops::sim
