#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "assetops/agents/agent.hpp"
#include "assetops/app/suite.hpp"
#include "assetops/profiler/reports.hpp"
#include "assetops/sim/fleet.hpp"

namespace assetops {

struct WorldConfig {
    std::uint64_t seed = 7;
    sim::LatencyConfig latency = sim::LatencyConfig::fast();
    ClockMode clock = ClockMode::virtual_time;
    int assets = 6;
    double hallucination_rate = 0.25;
    /// "scripted" or "remote" (environment-configured chat completions).
    std::string planner = "scripted";
    RecoveryPolicy policy;
};

/// Everything one run shares: fleet, tool servers, clock, profiler, planner.
class World {
public:
    explicit World(WorldConfig config);

    AgentEnv& env() noexcept { return env_; }
    Profiler& profiler() noexcept { return profiler_; }
    Clock& clock() noexcept { return *clock_; }
    ToolRegistry& registry() noexcept { return registry_; }
    const sim::SyntheticFleet& fleet() const noexcept { return *fleet_; }
    const WorldConfig& config() const noexcept { return config_; }

    std::unique_ptr<DialogAgent> new_agent(Architecture arch, const std::string& dialog_id, Category category);

private:
    WorldConfig config_;
    std::shared_ptr<const sim::SyntheticFleet> fleet_;
    ToolRegistry registry_;
    std::unique_ptr<Clock> clock_;
    Profiler profiler_;
    std::unique_ptr<Planner> planner_;
    TurnCounter turns_;
    AgentEnv env_;
};

struct RunConfig {
    Architecture architecture = Architecture::supervisor;
    WorldConfig world;
    /// Run dialogs on concurrent sessions, each on its own clock. Output is
    /// then no longer byte-reproducible.
    bool concurrent = false;
};

struct RunOutput {
    RunConfig config;
    std::vector<std::string> dialog_ids;
    std::vector<Json> rollouts;
    std::shared_ptr<World> world;
    RunSummary summary;
    PromptStats prompts;

    Json summary_json() const;
};

/// Executes every dialog of the suite under one architecture.
RunOutput run_suite(const BenchmarkSuite& suite, const RunConfig& config);

/// Writes rollouts/<dialog>.json, profile_events.jsonl, profile_turns.jsonl,
/// summary.json and report.txt under `dir`.
void write_run(const RunOutput& run, const std::filesystem::path& dir);

/// A run rebuilt from a directory written by write_run.
struct LoadedRun {
    Architecture architecture = Architecture::supervisor;
    std::unique_ptr<Profiler> profiler;
    RunSummary summary;
    PromptStats prompts;
};
LoadedRun load_run(const std::filesystem::path& dir);

/// All profiler tables for a set of runs.
std::string render_reports(const std::vector<const RunSummary*>& runs,
                           const std::vector<std::pair<Architecture, PromptStats>>& prompts);

} // namespace assetops
