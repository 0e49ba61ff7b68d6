#include "assetops/agents/agent.hpp"

#include <cstdio>

#include "assetops/agents/repair.hpp"

namespace assetops {

void AgentEnv::validate() const {
    if (!registry || !clock || !profiler || !planner || !turn_counter)
        throw ConfigError("agent environment incomplete");
    policy.validate();
    if (hallucination_rate < 0.0 || hallucination_rate > 1.0)
        throw ConfigError("hallucination rate must be in [0, 1]");
}

DialogAgent::DialogAgent(AgentEnv& env, std::string dialog_id, Category category, Architecture arch, bool reuse)
    : env_(env), session_(dialog_id, category, arch, (env.validate(), env.clock->now())), store_(dialog_id, reuse) {
    env_.profiler->open_dialog(dialog_id, arch, category);
}

DialogAgent::Consult DialogAgent::consult(LlmPurpose purpose, const Json& context, const Json& proposal,
                                          std::function<bool(const Json&)> accept) {
    PlannerRequest req{purpose, context, proposal, std::move(accept)};
    const Timestamp t0 = env_.clock->now();
    PlannerReply r = env_.planner->complete(req);
    if (!r.measured || env_.clock->is_virtual()) env_.clock->elapse(r.record.latency_ms);
    r.record.purpose = purpose;
    ProfileEvent e;
    e.tier = Tier::llm;
    e.dialog_id = session_.dialog_id();
    e.turn_index = current_turn_;
    e.started_at = t0;
    e.latency_ms = r.record.latency_ms;
    e.detail = r.record;
    env_.profiler->record(std::move(e));
    return {std::move(r.decision), r.record.latency_ms};
}

Repairer DialogAgent::make_repairer() {
    return [this](const ToolCall& call, const std::vector<Violation>& violations) -> std::optional<ToolCall> {
        const std::optional<ToolCall> rule = scripted_repair(env_.registry->catalog(), call, violations);
        Json vs = Json::array();
        for (const auto& v : violations) vs.push_back(v.to_string());
        Json context{{"call", {{"server", call.server}, {"tool", call.tool}, {"args", call.args}}},
                     {"violations", vs},
                     {"error", call.error_detail.value_or("")}};
        Json proposal = rule ? Json{{"server", rule->server}, {"tool", rule->tool}, {"args", rule->args}} : Json();
        const ToolCatalog& catalog = env_.registry->catalog();
        Consult c = consult(LlmPurpose::repair, context, proposal, [&](const Json& d) {
            if (!d.is_object() || !d.contains("server") || !d.contains("tool") || !d.contains("args")) return false;
            ToolCall probe = call;
            probe.server = d["server"].is_string() ? d["server"].get<std::string>() : "";
            probe.tool = d["tool"].is_string() ? d["tool"].get<std::string>() : "";
            probe.args = d["args"];
            return catalog.validate_name(probe) && catalog.validate_schema(probe).empty();
        });
        if (c.decision.is_null()) return std::nullopt;
        ToolCall fixed = call;
        fixed.server = c.decision.at("server").get<std::string>();
        fixed.tool = c.decision.at("tool").get<std::string>();
        fixed.args = c.decision.at("args");
        return fixed;
    };
}

SpecialistContext DialogAgent::specialist_context(ExecMode mode) {
    SpecialistContext ctx;
    ctx.dialog_id = session_.dialog_id();
    ctx.turn_index = current_turn_;
    ctx.store = &store_;
    ctx.exec = ExecContext{env_.registry, env_.clock, env_.profiler, make_repairer(), env_.latency.call_budget_ms};
    ctx.policy = env_.policy;
    ctx.mode = mode;
    ctx.next_call_id = [this] {
        char buf[32];
        std::snprintf(buf, sizeof buf, "/c%03d", ++call_counter_);
        return session_.dialog_id() + buf;
    };
    return ctx;
}

Turn DialogAgent::finish_turn(Timestamp started_at, std::string answer, bool success, TurnSummary summary,
                              const TurnObserver& observer) {
    const DurationMs duration = env_.clock->now() - started_at;
    const Turn& t = session_.end_turn(std::move(answer), duration, success);
    env_.profiler->record_turn(
        TurnTiming{session_.dialog_id(), t.index, t.global_index, started_at, duration, success, t.output_chars});
    summary.index = t.index;
    summary.success = success;
    summary.duration_ms = duration;
    summaries_.push_back(summary);
    if (observer)
        observer(Json{{"type", "final_text"},
                      {"turn", t.index},
                      {"text", t.assistant_text},
                      {"success", success},
                      {"duration_ms", duration},
                      {"tool_calls", summary.tool_calls},
                      {"artifacts_reused", summary.artifacts_reused},
                      {"artifact_ids", summary.artifact_ids}});
    return t;
}

std::unique_ptr<DialogAgent> make_agent(AgentEnv& env, Architecture arch, std::string dialog_id, Category category) {
    switch (arch) {
    case Architecture::plan_execute: return make_baseline(env, std::move(dialog_id), category);
    case Architecture::supervisor: return make_supervisor(env, std::move(dialog_id), category, false);
    case Architecture::supervisor_parallel: return make_supervisor(env, std::move(dialog_id), category, true);
    }
    throw ConfigError("unknown architecture");
}

} // namespace assetops
