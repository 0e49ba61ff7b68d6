#include "assetops/app/runner.hpp"

#include <fstream>
#include <future>

#include "assetops/sim/servers.hpp"

namespace assetops {

namespace fs = std::filesystem;

World::World(WorldConfig config) : config_(std::move(config)) {
    if (config_.assets < 1) throw ConfigError("a fleet needs at least one asset");
    fleet_ = std::make_shared<const sim::SyntheticFleet>(sim::generate_fleet(config_.seed, config_.assets));
    sim::register_simulated_servers(registry_, fleet_, config_.latency, config_.seed);
    clock_ = std::make_unique<Clock>(config_.clock);
    if (config_.planner == "scripted") planner_ = std::make_unique<ScriptedPlanner>(config_.latency.planner);
    else if (config_.planner == "remote") planner_ = std::make_unique<RemotePlanner>(RemoteModelConfig::from_env());
    else throw ConfigError("unknown planner " + config_.planner);
    env_.registry = &registry_;
    env_.clock = clock_.get();
    env_.profiler = &profiler_;
    env_.planner = planner_.get();
    env_.turn_counter = &turns_;
    env_.latency = config_.latency;
    env_.policy = config_.policy;
    env_.data_window = fleet_->window;
    env_.seed = config_.seed;
    env_.hallucination_rate = config_.hallucination_rate;
    env_.validate();
}

std::unique_ptr<DialogAgent> World::new_agent(Architecture arch, const std::string& dialog_id, Category category) {
    return make_agent(env_, arch, dialog_id, category);
}

Json RunOutput::summary_json() const {
    return Json{{"architecture", to_string(config.architecture)},
                {"seed", config.world.seed},
                {"latency_config", config.world.latency.name},
                {"concurrent", config.concurrent},
                {"run", summary.to_json()},
                {"prompt_stats", prompts.to_json()},
                {"turn_positions", turn_position_report(summary).to_json()},
                {"per_server_ms_per_dialog", per_server_report(summary)}};
}

namespace {

Json run_dialog(DialogAgent& agent, const DialogScript& script) {
    for (const auto& text : script.turns) agent.run_turn(text);
    return agent.rollout();
}

} // namespace

RunOutput run_suite(const BenchmarkSuite& suite, const RunConfig& config) {
    suite.validate();
    RunOutput out;
    out.config = config;
    out.world = std::make_shared<World>(config.world);
    World& w = *out.world;

    if (!config.concurrent) {
        for (const auto& d : suite.dialogs) {
            auto agent = w.new_agent(config.architecture, d.dialog_id, d.category);
            out.rollouts.push_back(run_dialog(*agent, d));
            w.profiler().close_dialog(d.dialog_id);
            out.dialog_ids.push_back(d.dialog_id);
        }
    } else {
        // Independent sessions: each gets its own clock so virtual time
        // stays per-dialog.
        std::vector<std::unique_ptr<Clock>> clocks;
        std::vector<AgentEnv> envs;
        envs.reserve(suite.dialogs.size());
        for (std::size_t i = 0; i < suite.dialogs.size(); ++i) {
            clocks.push_back(std::make_unique<Clock>(config.world.clock));
            envs.push_back(w.env());
            envs.back().clock = clocks.back().get();
        }
        std::vector<std::future<Json>> running;
        for (std::size_t i = 0; i < suite.dialogs.size(); ++i)
            running.push_back(std::async(std::launch::async, [&, i] {
                const auto& d = suite.dialogs[i];
                auto agent = make_agent(envs[i], config.architecture, d.dialog_id, d.category);
                return run_dialog(*agent, d);
            }));
        for (std::size_t i = 0; i < running.size(); ++i) {
            out.rollouts.push_back(running[i].get());
            w.profiler().close_dialog(suite.dialogs[i].dialog_id);
            out.dialog_ids.push_back(suite.dialogs[i].dialog_id);
        }
    }
    out.summary = summarize_run(config.architecture, w.profiler().profiles());
    out.prompts = prompt_stats(w.profiler().events());
    return out;
}

std::string render_reports(const std::vector<const RunSummary*>& runs,
                           const std::vector<std::pair<Architecture, PromptStats>>& prompts) {
    std::vector<RunSummary> copies;
    for (const auto* r : runs) copies.push_back(*r);
    return render_run_summary(copies) + "\n" + render_decomposition(copies) + "\n" + render_per_server(copies) + "\n" +
           render_turn_positions(copies) + "\n" + render_prompt_stats(prompts);
}

void write_run(const RunOutput& run, const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir / "rollouts", ec);
    if (ec) throw Error("cannot create " + (dir / "rollouts").string() + ": " + ec.message());
    auto open = [](const fs::path& p) {
        std::ofstream f(p, std::ios::binary | std::ios::trunc);
        if (!f) throw Error("cannot write " + p.string());
        return f;
    };
    for (std::size_t i = 0; i < run.rollouts.size(); ++i) {
        auto f = open(dir / "rollouts" / (run.dialog_ids[i] + ".json"));
        f << run.rollouts[i].dump(2) << '\n';
    }
    {
        auto f = open(dir / "profile_events.jsonl");
        run.world->profiler().write_event_log(f);
    }
    {
        auto f = open(dir / "profile_turns.jsonl");
        run.world->profiler().write_turn_log(f);
    }
    {
        auto f = open(dir / "summary.json");
        f << run.summary_json().dump(2) << '\n';
    }
    {
        auto f = open(dir / "report.txt");
        f << render_reports({&run.summary}, {{run.config.architecture, run.prompts}});
    }
}

LoadedRun load_run(const fs::path& dir) {
    std::ifstream events(dir / "profile_events.jsonl");
    std::ifstream turns(dir / "profile_turns.jsonl");
    if (!events || !turns) throw NotFoundError("no profile logs in " + dir.string());
    LoadedRun out;
    out.profiler = std::make_unique<Profiler>();
    Profiler::load(*out.profiler, events, turns);
    const auto ids = out.profiler->dialogs();
    if (ids.empty()) throw ValidationError("empty profile log in " + dir.string());
    out.architecture = out.profiler->decompose(ids.front()).architecture;
    out.summary = summarize_run(out.architecture, out.profiler->profiles());
    out.prompts = prompt_stats(out.profiler->events());
    return out;
}

} // namespace assetops
