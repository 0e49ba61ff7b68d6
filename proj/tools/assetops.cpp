// Command-line entry point: benchmark runs, evaluation, reports, chat, service.
//
// Exit codes: 0 success, 2 configuration or usage error, 3 execution failure,
// 4 evaluation failure.

#include <algorithm>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "assetops/app/runner.hpp"
#include "assetops/app/service.hpp"
#include "assetops/core/table.hpp"
#include "assetops/eval/report.hpp"

namespace fs = std::filesystem;
using namespace assetops;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitExecution = 3;
constexpr int kExitEvaluation = 4;

/// Failure carrying its exit code.
struct Exit {
    int code;
    std::string message;
};

struct WorldOptions {
    std::uint64_t seed = 7;
    std::string latency = "fast";
    std::string clock = "virtual";
    std::string planner = "scripted";
    int assets = 6;
    double hallucination_rate = 0.25;

    void add_to(CLI::App* app, bool with_fault_knobs = true) {
        app->add_option("--seed", seed, "Fleet, latency and planner seed")->capture_default_str();
        app->add_option("--latency-config", latency, "fast, paper-shape or a JSON file")->capture_default_str();
        app->add_option("--clock", clock, "virtual or real")
            ->check(CLI::IsMember({"virtual", "real"}))
            ->capture_default_str();
        app->add_option("--planner", planner, "scripted or remote (ASSETOPS_LLM_* variables)")
            ->check(CLI::IsMember({"scripted", "remote"}))
            ->capture_default_str();
        app->add_option("--assets", assets, "Number of chillers in the fleet")->capture_default_str();
        if (with_fault_knobs)
            app->add_option("--hallucination-rate", hallucination_rate,
                            "Plan-execute per-dialog probability of one malformed call")
                ->check(CLI::Range(0.0, 1.0))
                ->capture_default_str();
    }

    WorldConfig build() const {
        WorldConfig w;
        w.seed = seed;
        w.latency = sim::LatencyConfig::load(latency);
        w.clock = clock == "real" ? ClockMode::real : ClockMode::virtual_time;
        w.planner = planner;
        w.assets = assets;
        w.hallucination_rate = hallucination_rate;
        return w;
    }
};

std::vector<Architecture> parse_architectures(const std::string& arch) {
    if (arch == "all") return {std::begin(kAllArchitectures), std::end(kAllArchitectures)};
    return {architecture_from_string(arch)};
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Exit{kExitExecution, "cannot write " + path.string()};
    f << text;
}

// ---- run -------------------------------------------------------------------

struct RunOptions {
    WorldOptions world;
    std::string arch = "all";
    std::string suite = "default";
    std::string out_dir = "runs";
    bool concurrent = false;
};

int cmd_run(const RunOptions& o) {
    BenchmarkSuite suite;
    WorldConfig world;
    std::vector<Architecture> archs;
    try {
        suite = BenchmarkSuite::load(o.suite);
        suite.validate();
        world = o.world.build();
        archs = parse_architectures(o.arch);
    } catch (const std::exception& e) {
        throw Exit{kExitConfig, e.what()};
    }

    std::vector<RunOutput> runs;
    try {
        for (Architecture a : archs) {
            RunConfig rc;
            rc.architecture = a;
            rc.world = world;
            rc.concurrent = o.concurrent;
            runs.push_back(run_suite(suite, rc));
            const fs::path dir = fs::path(o.out_dir) / std::string(to_string(a));
            write_run(runs.back(), dir);
            std::cerr << "wrote " << dir.string() << '\n';
        }
    } catch (const Exit&) {
        throw;
    } catch (const std::exception& e) {
        throw Exit{kExitExecution, e.what()};
    }

    std::vector<const RunSummary*> summaries;
    std::vector<std::pair<Architecture, PromptStats>> prompts;
    for (const auto& r : runs) {
        summaries.push_back(&r.summary);
        prompts.emplace_back(r.config.architecture, r.prompts);
    }
    const std::string report = render_reports(summaries, prompts);
    if (runs.size() > 1) write_text(fs::path(o.out_dir) / "report.txt", report);
    std::cout << report;
    return 0;
}

// ---- evaluate ----------------------------------------------------------------

struct EvaluateOptions {
    std::vector<std::string> rollouts;
    std::string ground_truth;
    std::string judge = "scripted";
    std::string out_dir;
    std::string label;
    std::string suite = "default";
    std::uint64_t seed = 7;
    int assets = 6;
    bool dispatched_only = false;
    bool sequential = false;
};

std::vector<fs::path> rollout_files(const std::vector<std::string>& inputs) {
    std::vector<fs::path> out;
    for (const auto& in : inputs) {
        fs::path p(in);
        if (fs::is_directory(p / "rollouts")) p /= "rollouts";
        if (fs::is_directory(p)) {
            std::vector<fs::path> files;
            for (const auto& e : fs::directory_iterator(p))
                if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
            std::sort(files.begin(), files.end());
            out.insert(out.end(), files.begin(), files.end());
        } else if (fs::is_regular_file(p)) {
            out.push_back(p);
        } else {
            throw Exit{kExitConfig, "no such rollout input: " + in};
        }
    }
    if (out.empty()) throw Exit{kExitConfig, "no rollout files found"};
    return out;
}

int cmd_evaluate(const EvaluateOptions& o) {
    const auto files = rollout_files(o.rollouts);
    GroundTruthSet truths;
    std::unique_ptr<Judge> judge;
    try {
        if (!o.ground_truth.empty()) {
            truths = load_ground_truth(o.ground_truth);
        } else {
            const auto fleet = sim::generate_fleet(o.seed, o.assets);
            truths = derive_ground_truth(BenchmarkSuite::load(o.suite), fleet);
        }
        if (o.judge == "scripted") judge = std::make_unique<ScriptedJudge>();
        else judge = std::make_unique<RemoteJudge>(RemoteModelConfig::from_env("ASSETOPS_JUDGE"));
    } catch (const std::exception& e) {
        throw Exit{kExitConfig, e.what()};
    }

    std::vector<StandardizedDialog> dialogs;
    try {
        for (const auto& f : files) dialogs.push_back(normalize_file(f));
    } catch (const std::exception& e) {
        throw Exit{kExitEvaluation, e.what()};
    }
    std::string label = o.label;
    if (label.empty()) {
        try {
            label = std::string(display_name(architecture_from_string(dialogs.front().architecture)));
        } catch (const std::exception&) {
            label = dialogs.front().architecture;
        }
    }
    PipelineOptions po;
    po.concurrent = !o.sequential;
    po.objective.count_undispatched = !o.dispatched_only;
    const EvalReport report = run_pipeline(dialogs, truths, *judge, label, po);

    std::string text = render_metrics_table({&report});
    for (const auto& [id, why] : report.subjective.skipped) text += "skipped " + id + ": " + why + "\n";
    for (const auto& [branch, why] : report.branch_errors) text += "branch " + branch + " failed: " + why + "\n";
    std::cout << text;
    if (!o.out_dir.empty()) {
        fs::create_directories(o.out_dir);
        write_text(fs::path(o.out_dir) / "eval_report.json", report.to_json().dump(2) + "\n");
        write_text(fs::path(o.out_dir) / "eval_report.txt", text);
        Json standardized = Json::array();
        for (const auto& d : dialogs) standardized.push_back(d.to_json());
        write_text(fs::path(o.out_dir) / "standardized.json", standardized.dump(2) + "\n");
        std::cerr << "wrote " << o.out_dir << '\n';
    }
    if (!report.branch_errors.empty() || !report.subjective.skipped.empty())
        throw Exit{kExitEvaluation, "evaluation incomplete"};
    return 0;
}

// ---- report / compare ----------------------------------------------------------

int cmd_report(const std::vector<std::string>& dirs) {
    std::vector<LoadedRun> runs;
    try {
        for (const auto& d : dirs) runs.push_back(load_run(d));
    } catch (const NotFoundError& e) {
        throw Exit{kExitConfig, e.what()};
    } catch (const std::exception& e) {
        throw Exit{kExitExecution, e.what()};
    }
    std::vector<const RunSummary*> summaries;
    std::vector<std::pair<Architecture, PromptStats>> prompts;
    for (const auto& r : runs) {
        summaries.push_back(&r.summary);
        prompts.emplace_back(r.architecture, r.prompts);
    }
    std::cout << render_reports(summaries, prompts);
    return 0;
}

EvalReport load_report(const std::string& in) {
    fs::path p(in);
    if (fs::is_directory(p)) p /= "eval_report.json";
    std::ifstream f(p);
    if (!f) throw Exit{kExitConfig, "no evaluation report at " + p.string()};
    try {
        return EvalReport::from_json(Json::parse(f));
    } catch (const std::exception& e) {
        throw Exit{kExitEvaluation, p.string() + ": " + e.what()};
    }
}

int cmd_compare(const std::string& a, const std::string& b) {
    std::cout << render_comparison(load_report(a), load_report(b));
    return 0;
}

// ---- chat / serve ----------------------------------------------------------------

int cmd_chat(const WorldOptions& wo, const std::string& arch) {
    std::unique_ptr<World> world;
    Architecture a;
    try {
        world = std::make_unique<World>(wo.build());
        a = architecture_from_string(arch);
    } catch (const std::exception& e) {
        throw Exit{kExitConfig, e.what()};
    }
    auto agent = world->new_agent(a, "chat", Category::operational_monitoring);
    std::cout << "assetops chat (" << display_name(a) << "). Type /artifacts, /profile or /quit.\n";
    std::string line;
    while (std::cout << "> " << std::flush, std::getline(std::cin, line)) {
        if (line.empty()) continue;
        if (line == "/quit" || line == "/exit") break;
        if (line == "/artifacts") {
            for (const auto* art : agent->store().list_all())
                std::cout << art->artifact_id << "  " << to_string(art->evidence_kind) << "  " << art->asset_id
                          << (art->reused() ? "  [reused]" : "  [fetched]") << '\n';
            continue;
        }
        if (line == "/profile") {
            std::cout << world->profiler().snapshot("chat").to_json().dump(2) << '\n';
            continue;
        }
        try {
            const Turn t = agent->run_turn(line);
            const TurnSummary& s = agent->summaries().back();
            std::cout << t.assistant_text << "\n[turn " << s.index << "] tools called: " << s.tool_calls
                      << ", artifacts reused: " << s.artifacts_reused << "/" << s.artifacts_total
                      << ", duration: " << assetops::fixed(static_cast<double>(s.duration_ms) / 1000.0, 1) << " s"
                      << (s.success ? "" : ", unresolved") << "\n";
        } catch (const std::exception& e) {
            std::cout << "error: " << e.what() << '\n';
        }
    }
    return 0;
}

Service* g_service = nullptr;

int cmd_serve(const WorldOptions& wo, const std::string& host, int port) {
    std::unique_ptr<Service> service;
    try {
        service = std::make_unique<Service>(wo.build());
    } catch (const std::exception& e) {
        throw Exit{kExitConfig, e.what()};
    }
    g_service = service.get();
    std::signal(SIGINT, [](int) {
        if (g_service) g_service->shutdown();
    });
    std::signal(SIGTERM, [](int) {
        if (g_service) g_service->shutdown();
    });
    try {
        service->serve(host, port, [&](int bound) {
            std::cerr << "serving on http://" << host << ":" << bound << '\n';
        });
    } catch (const std::exception& e) {
        throw Exit{kExitExecution, e.what()};
    }
    g_service = nullptr;
    return 0;
}

// ---- suite / fleet -------------------------------------------------------------

int cmd_suite(const std::string& suite_name, const std::string& out, const std::string& gt_out,
              std::uint64_t seed, int assets) {
    BenchmarkSuite suite;
    try {
        suite = BenchmarkSuite::load(suite_name);
    } catch (const std::exception& e) {
        throw Exit{kExitConfig, e.what()};
    }
    const std::string text = suite.to_json().dump(2) + "\n";
    if (out.empty()) std::cout << text;
    else write_text(out, text);
    if (!gt_out.empty()) {
        const auto fleet = sim::generate_fleet(seed, assets);
        write_text(gt_out, ground_truth_to_json(derive_ground_truth(suite, fleet)).dump(2) + "\n");
    }
    return 0;
}

int cmd_fleet(std::uint64_t seed, int assets, const std::string& out, bool summary_only) {
    const auto fleet = sim::generate_fleet(seed, assets);
    Json j = fleet.to_json();
    if (summary_only) j.erase("series");
    const std::string text = j.dump(summary_only ? 2 : -1) + "\n";
    if (out.empty()) std::cout << text;
    else write_text(out, text);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-turn industrial O&M dialog orchestration runtime"};
    app.require_subcommand(1);

    RunOptions run;
    auto* run_cmd = app.add_subcommand("run", "Run the benchmark suite and write rollouts and profiles");
    run.world.add_to(run_cmd);
    run_cmd->add_option("--arch", run.arch, "plan-execute, supervisor, supervisor-parallel or all")
        ->capture_default_str();
    run_cmd->add_option("--suite", run.suite, "default or a suite JSON file")->capture_default_str();
    run_cmd->add_option("--out-dir", run.out_dir, "Output directory")->capture_default_str();
    run_cmd->add_flag("--concurrent", run.concurrent, "Run dialogs concurrently (not byte-reproducible)");

    EvaluateOptions ev;
    auto* ev_cmd = app.add_subcommand("evaluate", "Score rollouts with the evaluation pipeline");
    ev_cmd->add_option("rollouts", ev.rollouts, "Rollout files, rollout directories or run directories")
        ->required();
    ev_cmd->add_option("--ground-truth", ev.ground_truth, "Ground-truth JSON (default: derived from suite and seed)");
    ev_cmd->add_option("--judge", ev.judge, "scripted or remote (ASSETOPS_JUDGE_* variables)")
        ->check(CLI::IsMember({"scripted", "remote"}))
        ->capture_default_str();
    ev_cmd->add_option("--out-dir", ev.out_dir, "Directory for eval_report.json and eval_report.txt");
    ev_cmd->add_option("--label", ev.label, "Row label (default: architecture of the rollouts)");
    ev_cmd->add_option("--suite", ev.suite, "Suite used to derive ground truth")->capture_default_str();
    ev_cmd->add_option("--seed", ev.seed, "Fleet seed used to derive ground truth")->capture_default_str();
    ev_cmd->add_option("--assets", ev.assets, "Fleet size used to derive ground truth")->capture_default_str();
    ev_cmd->add_flag("--dispatched-only", ev.dispatched_only,
                     "Execution success over dispatched calls only (default: all extracted calls)");
    ev_cmd->add_flag("--sequential", ev.sequential, "Run the three branches one after another");

    std::vector<std::string> report_dirs;
    auto* rep_cmd = app.add_subcommand("report", "Render profiler tables from run directories");
    rep_cmd->add_option("run_dirs", report_dirs, "Directories written by 'run'")->required();

    std::string cmp_a, cmp_b;
    auto* cmp_cmd = app.add_subcommand("compare", "Delta tables between two evaluation reports (A - B)");
    cmp_cmd->add_option("a", cmp_a, "Report JSON or evaluate output directory")->required();
    cmp_cmd->add_option("b", cmp_b, "Report JSON or evaluate output directory")->required();

    WorldOptions chat_world;
    std::string chat_arch = "supervisor";
    auto* chat_cmd = app.add_subcommand("chat", "Interactive terminal session");
    chat_world.add_to(chat_cmd);
    chat_cmd->add_option("--arch", chat_arch, "plan-execute, supervisor or supervisor-parallel")
        ->capture_default_str();

    WorldOptions serve_world;
    std::string host = "127.0.0.1";
    int port = 8080;
    auto* serve_cmd = app.add_subcommand("serve", "HTTP service with streamed turn events");
    serve_world.add_to(serve_cmd);
    serve_cmd->add_option("--host", host)->capture_default_str();
    serve_cmd->add_option("--port", port)->check(CLI::Range(1, 65535))->capture_default_str();

    std::string suite_name = "default", suite_out, gt_out;
    std::uint64_t suite_seed = 7;
    int suite_assets = 6;
    auto* suite_cmd = app.add_subcommand("suite", "Print or write the benchmark suite and its ground truth");
    suite_cmd->add_option("--suite", suite_name)->capture_default_str();
    suite_cmd->add_option("--out", suite_out, "Suite JSON path (default: stdout)");
    suite_cmd->add_option("--ground-truth", gt_out, "Also write derived ground truth here");
    suite_cmd->add_option("--seed", suite_seed)->capture_default_str();
    suite_cmd->add_option("--assets", suite_assets)->capture_default_str();

    std::uint64_t fleet_seed = 7;
    int fleet_assets = 6;
    std::string fleet_out;
    bool fleet_summary = false;
    auto* fleet_cmd = app.add_subcommand("fleet", "Dump the synthetic fleet");
    fleet_cmd->add_option("--seed", fleet_seed)->capture_default_str();
    fleet_cmd->add_option("--assets", fleet_assets)->capture_default_str();
    fleet_cmd->add_option("--out", fleet_out, "Output path (default: stdout)");
    fleet_cmd->add_flag("--summary", fleet_summary, "Omit the telemetry series");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    try {
        if (*run_cmd) return cmd_run(run);
        if (*ev_cmd) return cmd_evaluate(ev);
        if (*rep_cmd) return cmd_report(report_dirs);
        if (*cmp_cmd) return cmd_compare(cmp_a, cmp_b);
        if (*chat_cmd) return cmd_chat(chat_world, chat_arch);
        if (*serve_cmd) return cmd_serve(serve_world, host, port);
        if (*suite_cmd) return cmd_suite(suite_name, suite_out, gt_out, suite_seed, suite_assets);
        if (*fleet_cmd) return cmd_fleet(fleet_seed, fleet_assets, fleet_out, fleet_summary);
    } catch (const Exit& e) {
        std::cerr << "error: " << e.message << '\n';
        return e.code;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitExecution;
    }
    return 0;
}
