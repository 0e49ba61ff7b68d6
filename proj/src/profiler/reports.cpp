#include "assetops/profiler/reports.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "assetops/core/table.hpp"

namespace assetops {

namespace {

double share(DurationMs part, DurationMs whole) {
    return whole > 0 ? static_cast<double>(part) / static_cast<double>(whole) : 0.0;
}

std::string secs(double ms) { return fixed(ms / 1000.0, 1); }
std::string pct(double r) { return fixed(100.0 * r, 1) + "%"; }

} // namespace

double RunSummary::llm_share() const { return share(total_llm_ms, total_wall_ms); }
double RunSummary::tool_share() const { return share(total_tool_ms, total_wall_ms); }
double RunSummary::routing_share() const { return share(total_routing_ms, total_wall_ms); }

Json RunSummary::to_json() const {
    Json ds = Json::array();
    for (const auto& d : dialogs) ds.push_back(d.to_json());
    return Json{{"architecture", to_string(architecture)},
                {"total_wall_minutes", total_wall_minutes},
                {"total_wall_ms", total_wall_ms},
                {"total_llm_ms", total_llm_ms},
                {"total_tool_ms", total_tool_ms},
                {"total_routing_ms", total_routing_ms},
                {"total_tokens", total_tokens},
                {"total_llm_calls", total_llm_calls},
                {"total_tool_calls", total_tool_calls},
                {"turns", turns},
                {"dialogs", ds}};
}

RunSummary summarize_run(Architecture architecture, std::vector<DialogProfile> profiles) {
    RunSummary s;
    s.architecture = architecture;
    for (const auto& p : profiles) {
        s.total_wall_ms += p.wall_ms;
        s.total_llm_ms += p.llm_ms;
        s.total_tool_ms += p.tool_ms;
        s.total_routing_ms += p.routing_ms;
        s.total_tokens += p.total_tokens;
        s.total_llm_calls += p.llm_call_count;
        s.total_tool_calls += p.tool_call_count;
        s.turns += static_cast<std::int64_t>(p.per_turn.size());
    }
    s.total_wall_minutes = static_cast<double>(s.total_wall_ms) / 60000.0;
    s.dialogs = std::move(profiles);
    return s;
}

std::map<std::string, double> per_server_report(const RunSummary& run) {
    std::map<std::string, double> out;
    if (run.dialogs.empty()) return out;
    for (const auto& d : run.dialogs)
        for (const auto& [server, ms] : d.per_server_latency_sum) out[server] += static_cast<double>(ms);
    for (auto& [_, v] : out) v /= static_cast<double>(run.dialogs.size());
    return out;
}

Json PromptStats::to_json() const {
    return Json{{"calls", calls},
                {"mean_prompt_tokens", mean_prompt_tokens},
                {"p95_prompt_tokens", p95_prompt_tokens},
                {"max_latency_ms", max_latency_ms},
                {"slow_call_rate", slow_call_rate},
                {"slow_threshold_ms", slow_threshold_ms}};
}

std::int64_t percentile_nearest_rank(std::vector<std::int64_t> values, double pct) {
    if (values.empty()) return 0;
    if (pct <= 0.0 || pct > 100.0) throw ValidationError("percentile must be in (0, 100]");
    std::sort(values.begin(), values.end());
    auto rank = static_cast<std::size_t>(std::ceil(pct / 100.0 * static_cast<double>(values.size())));
    rank = std::clamp<std::size_t>(rank, 1, values.size());
    return values[rank - 1];
}

PromptStats prompt_stats(const std::vector<ProfileEvent>& events, DurationMs slow_threshold_ms) {
    PromptStats s;
    s.slow_threshold_ms = slow_threshold_ms;
    std::vector<std::int64_t> tokens;
    std::int64_t slow = 0;
    for (const auto& e : events) {
        const auto* llm = std::get_if<LlmCallRecord>(&e.detail);
        if (!llm) continue;
        tokens.push_back(llm->prompt_tokens);
        s.max_latency_ms = std::max(s.max_latency_ms, e.latency_ms);
        if (e.latency_ms > slow_threshold_ms) ++slow;
    }
    s.calls = static_cast<std::int64_t>(tokens.size());
    if (tokens.empty()) return s;
    double sum = 0;
    for (auto t : tokens) sum += static_cast<double>(t);
    s.mean_prompt_tokens = sum / static_cast<double>(tokens.size());
    s.p95_prompt_tokens = percentile_nearest_rank(tokens, 95.0);
    s.slow_call_rate = static_cast<double>(slow) / static_cast<double>(tokens.size());
    return s;
}

Json TurnPositionReport::to_json() const {
    Json by = Json::object();
    for (const auto& [k, v] : mean_ms_by_position) by[std::to_string(k)] = v;
    Json j{{"mean_ms_by_position", by}};
    j["turns_2_to_5_ms"] = turns_2_to_5_ms ? Json(*turns_2_to_5_ms) : Json();
    return j;
}

TurnPositionReport turn_position_report(const RunSummary& run) {
    TurnPositionReport r;
    std::map<int, std::pair<double, int>> acc;
    double later_sum = 0;
    int later_dialogs = 0;
    for (const auto& d : run.dialogs) {
        double dialog_sum = 0;
        int dialog_n = 0;
        for (const auto& t : d.per_turn) {
            auto& a = acc[t.index];
            a.first += static_cast<double>(t.duration_ms);
            ++a.second;
            if (t.index >= 2 && t.index <= 5) {
                dialog_sum += static_cast<double>(t.duration_ms);
                ++dialog_n;
            }
        }
        if (dialog_n > 0) {
            later_sum += dialog_sum / dialog_n;
            ++later_dialogs;
        }
    }
    for (const auto& [k, a] : acc) r.mean_ms_by_position[k] = a.first / a.second;
    if (later_dialogs > 0) r.turns_2_to_5_ms = later_sum / later_dialogs;
    return r;
}

std::string render_run_summary(const std::vector<RunSummary>& runs) {
    TextTable t{"Run-level profiling summary",
                {"Architecture", "Dialogs", "Turns", "Total wall (min)", "Total tokens", "LLM calls", "Tool calls"},
                {}};
    for (const auto& r : runs)
        t.rows.push_back({std::string(display_name(r.architecture)), std::to_string(r.dialogs.size()),
                          std::to_string(r.turns), fixed(r.total_wall_minutes, 2), std::to_string(r.total_tokens),
                          std::to_string(r.total_llm_calls), std::to_string(r.total_tool_calls)});
    return t.render();
}

std::string render_decomposition(const std::vector<RunSummary>& runs) {
    TextTable t{"Wall-time decomposition (share of total wall time)",
                {"Architecture", "LLM (s)", "Tool (s)", "Routing (s)", "LLM share", "Tool share", "Routing share"},
                {}};
    for (const auto& r : runs)
        t.rows.push_back({std::string(display_name(r.architecture)), secs(static_cast<double>(r.total_llm_ms)),
                          secs(static_cast<double>(r.total_tool_ms)), secs(static_cast<double>(r.total_routing_ms)),
                          pct(r.llm_share()), pct(r.tool_share()), pct(r.routing_share())});
    return t.render();
}

std::string render_per_server(const std::vector<RunSummary>& runs) {
    std::set<std::string> servers;
    std::vector<std::map<std::string, double>> reports;
    for (const auto& r : runs) {
        reports.push_back(per_server_report(r));
        for (const auto& [s, _] : reports.back()) servers.insert(s);
    }
    TextTable t{"Average tool server latency per dialog (s)", {"Server"}, {}};
    for (const auto& r : runs) t.headers.emplace_back(display_name(r.architecture));
    for (const auto& s : servers) {
        std::vector<std::string> row{s};
        for (const auto& rep : reports) {
            auto it = rep.find(s);
            row.push_back(it == rep.end() ? "0.0" : secs(it->second));
        }
        t.rows.push_back(std::move(row));
    }
    return t.render();
}

std::string render_turn_positions(const std::vector<RunSummary>& runs) {
    std::vector<TurnPositionReport> reps;
    int max_pos = 0;
    for (const auto& r : runs) {
        reps.push_back(turn_position_report(r));
        if (!reps.back().mean_ms_by_position.empty())
            max_pos = std::max(max_pos, reps.back().mean_ms_by_position.rbegin()->first);
    }
    TextTable t{"Average turn duration by position (s)", {"Turn"}, {}};
    for (const auto& r : runs) t.headers.emplace_back(display_name(r.architecture));
    for (int p = 1; p <= max_pos; ++p) {
        std::vector<std::string> row{"Turn " + std::to_string(p)};
        for (const auto& rep : reps) {
            auto it = rep.mean_ms_by_position.find(p);
            row.push_back(it == rep.mean_ms_by_position.end() ? "-" : secs(it->second));
        }
        t.rows.push_back(std::move(row));
    }
    std::vector<std::string> avg{"Turns 2-5 avg."};
    for (const auto& rep : reps) avg.push_back(rep.turns_2_to_5_ms ? secs(*rep.turns_2_to_5_ms) : "-");
    t.rows.push_back(std::move(avg));
    std::vector<std::string> speed{"Turn 1 / turns 2-5"};
    for (const auto& rep : reps) {
        auto it = rep.mean_ms_by_position.find(1);
        if (it == rep.mean_ms_by_position.end() || !rep.turns_2_to_5_ms || *rep.turns_2_to_5_ms <= 0)
            speed.push_back("-");
        else
            speed.push_back(fixed(it->second / *rep.turns_2_to_5_ms, 2) + "x");
    }
    t.rows.push_back(std::move(speed));
    return t.render();
}

std::string render_prompt_stats(const std::vector<std::pair<Architecture, PromptStats>>& stats) {
    TextTable t{"Planner prompt statistics",
                {"Architecture", "LLM calls", "Mean tokens/call", "p95 tokens/call", "Max latency (s)", "Slow-call rate"},
                {}};
    for (const auto& [a, s] : stats)
        t.rows.push_back({std::string(display_name(a)), std::to_string(s.calls), fixed(s.mean_prompt_tokens, 0),
                          std::to_string(s.p95_prompt_tokens), secs(static_cast<double>(s.max_latency_ms)),
                          pct(s.slow_call_rate) + " (>" + fixed(static_cast<double>(s.slow_threshold_ms) / 1000.0, 0) +
                              " s)"});
    return t.render();
}

} // namespace assetops
