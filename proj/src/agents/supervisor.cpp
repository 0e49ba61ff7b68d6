#include <algorithm>
#include <set>

#include "assetops/agents/agent.hpp"
#include "assetops/agents/synthesis.hpp"

namespace assetops {

namespace {

/// Planner context never carries more than this many artifact summaries.
constexpr std::size_t kContextArtifacts = 12;
constexpr std::size_t kContextIntents = 3;

Json call_records(const std::vector<CallOutcome>& calls) {
    Json out = Json::array();
    for (const auto& c : calls)
        for (const auto& a : c.attempts) out.push_back(a.to_json());
    return out;
}

Json recovery_records(const std::vector<CallOutcome>& calls) {
    Json out = Json::array();
    for (const auto& c : calls)
        if (!c.recovery.actions.empty()) out.push_back(c.recovery.to_json());
    return out;
}

int attempt_count(const std::vector<CallOutcome>& calls) {
    int n = 0;
    for (const auto& c : calls) n += static_cast<int>(c.attempts.size());
    return n;
}

class SupervisorAgent final : public DialogAgent {
public:
    SupervisorAgent(AgentEnv& env, std::string dialog_id, Category category, bool parallel)
        : DialogAgent(env, std::move(dialog_id), category,
                      parallel ? Architecture::supervisor_parallel : Architecture::supervisor, true),
          parallel_(parallel) {}

    Turn run_turn(const std::string& user_text, const TurnObserver& observer) override;
    Json rollout() const override;

private:
    Json evidence_context() const {
        Json out = Json::array();
        const auto all = store_.list_all();
        const std::size_t from = all.size() > kContextArtifacts ? all.size() - kContextArtifacts : 0;
        for (std::size_t i = from; i < all.size(); ++i)
            out.push_back(Json{{"id", all[i]->artifact_id}, {"summary", summarize_artifact(*all[i])}});
        return out;
    }
    Json intent_history() const {
        Json out = Json::array();
        const std::size_t from = intents_.size() > kContextIntents ? intents_.size() - kContextIntents : 0;
        for (std::size_t i = from; i < intents_.size(); ++i) out.push_back(intents_[i].to_json());
        return out;
    }
    static Json plan_progress(const PlanState& s) {
        Json out = Json::array();
        for (const auto& n : s.nodes)
            out.push_back(Json{{"id", n.subtask.subtask_id},
                               {"specialist", to_string(n.subtask.specialist)},
                               {"status", to_string(n.status)}});
        return out;
    }

    bool parallel_;
    std::vector<Json> turns_;
};

Turn SupervisorAgent::run_turn(const std::string& user_text, const TurnObserver& observer) {
    const Timestamp started = env_.clock->now();
    session_.begin_turn(user_text, env_.turn_counter->next());
    current_turn_ = static_cast<int>(session_.turns().size());
    if (current_turn_ == 1 && env_.latency.setup_ms > 0) env_.clock->elapse(env_.latency.setup_ms);

    Json turn_log{{"index", current_turn_}, {"user_text", user_text}};
    TurnSummary summary;

    // Intent.
    const Intent rule_intent = interpret_intent_rules(user_text, intents_, env_.data_window.end());
    const Consult ic = consult(
        LlmPurpose::intent,
        Json{{"user_text", user_text}, {"previous_intents", intent_history()}, {"evidence", evidence_context()}},
        rule_intent.to_json(), [](const Json& d) {
            try {
                Intent::from_json(d);
                return true;
            } catch (const std::exception&) {
                return false;
            }
        });
    const Intent intent = Intent::from_json(ic.decision);
    intents_.push_back(intent);
    turn_log["intent"] = intent.to_json();
    if (observer) observer(Json{{"type", "intent"}, {"turn", current_turn_}, {"intent", intent.to_json()}});

    if (intent.needs_clarification) {
        std::string answer = synthesize(intent, {}, nullptr);
        consult(LlmPurpose::synthesize, Json{{"intent", intent.to_json()}}, Json{{"text", answer}});
        turn_log["routing"] = Json::array();
        turn_log["artifacts"] = Json::array();
        turn_log["plan_revision"] = 0;
        turn_log["assistant_text"] = answer;
        turn_log["success"] = false;
        Turn t = finish_turn(started, std::move(answer), false, summary, observer);
        turn_log["duration_ms"] = t.duration_ms;
        turns_.push_back(std::move(turn_log));
        return t;
    }

    // Plan against what the store already holds.
    PlanState state = plan_turn(intent, store_, env_.data_window.end());
    consult(LlmPurpose::plan,
            Json{{"intent", intent.to_json()}, {"evidence", evidence_context()}},
            state.to_json(), [](const Json&) { return false; });

    SpecialistContext sctx = specialist_context(parallel_ ? ExecMode::parallel : ExecMode::sequential);
    Json routing = Json::array();

    for (auto& node : state.nodes) {
        if (!node.coverable) continue;
        SpecialistResult r = run_specialist(node.subtask, sctx);
        if (!r.ok() || !r.calls.empty()) throw ValidationError("covered subtask issued tool calls");
        node.status = NodeStatus::completed;
        node.artifact_id = r.artifact_id;
        node.precompleted = true;
        routing.push_back(Json{{"subtask_id", node.subtask.subtask_id},
                               {"specialist", to_string(node.subtask.specialist)},
                               {"status", "reused"},
                               {"tool_calls", Json::array()},
                               {"recovery", Json::array()},
                               {"artifact_id", r.artifact_id}});
        if (observer)
            observer(Json{{"type", "routing"},
                          {"turn", current_turn_},
                          {"subtask_id", node.subtask.subtask_id},
                          {"specialist", to_string(node.subtask.specialist)},
                          {"goal", node.subtask.goal},
                          {"precompleted", true}});
    }

    while (auto idx = route_next(state)) {
        env_.clock->elapse(env_.latency.routing_overhead_ms);
        PlanNode& node = state.nodes[*idx];
        node.subtask.inputs = dependency_artifacts(state, node);
        if (observer)
            observer(Json{{"type", "routing"},
                          {"turn", current_turn_},
                          {"subtask_id", node.subtask.subtask_id},
                          {"specialist", to_string(node.subtask.specialist)},
                          {"goal", node.subtask.goal},
                          {"precompleted", false}});
        const std::string subtask_id = node.subtask.subtask_id;
        const Specialist who = node.subtask.specialist;
        SpecialistResult r = run_specialist(node.subtask, sctx);
        summary.tool_calls += attempt_count(r.calls);
        if (observer)
            for (const auto& c : r.calls)
                for (const auto& a : c.attempts)
                    observer(Json{{"type", "tool_call"},
                                  {"turn", current_turn_},
                                  {"subtask_id", subtask_id},
                                  {"call_id", a.call_id},
                                  {"server", a.server},
                                  {"tool", a.tool},
                                  {"status", to_string(a.status)},
                                  {"latency_ms", a.latency_ms}});
        routing.push_back(Json{{"subtask_id", subtask_id},
                               {"specialist", to_string(who)},
                               {"status", r.ok() ? std::string("completed") : std::string(to_string(r.failure))},
                               {"tool_calls", call_records(r.calls)},
                               {"recovery", recovery_records(r.calls)},
                               {"artifact_id", r.artifact_id}});
        replan(state, *idx, r, env_.data_window.start());

        Json ctx{{"intent", Json{{"category", to_string(intent.category)}, {"asset_ids", intent.asset_ids}}},
                 {"plan", plan_progress(state)},
                 {"revision", state.revision},
                 {"result",
                  r.ok() ? Json{{"subtask_id", subtask_id}, {"summary", summarize_artifact(*store_.get(r.artifact_id))}}
                         : Json{{"subtask_id", subtask_id},
                                {"failure", to_string(r.failure)},
                                {"detail", r.failure_detail}}},
                 {"evidence", evidence_context()}};
        if (parallel_) ctx["batch_outputs"] = r.fresh_payloads;
        const auto next = route_next(state);
        consult(LlmPurpose::plan, ctx,
                Json{{"next", next ? Json(state.nodes[*next].subtask.subtask_id) : Json()}},
                [](const Json&) { return false; });
    }

    std::vector<const Artifact*> used;
    Json artifact_records = Json::array();
    for (const auto& n : state.nodes) {
        if (n.artifact_id.empty()) continue;
        const Artifact* a = store_.get(n.artifact_id);
        used.push_back(a);
        artifact_records.push_back(a->to_json(false));
        summary.artifact_ids.push_back(n.artifact_id);
        ++summary.artifacts_total;
        if (a->reused()) ++summary.artifacts_reused;
    }
    std::string answer = synthesize(intent, used, &state);
    Json summaries = Json::array();
    for (const auto* a : used) summaries.push_back(summarize_artifact(*a));
    const Consult sc = consult(LlmPurpose::synthesize, Json{{"intent", intent.to_json()}, {"artifacts", summaries}},
                               Json{{"text", answer}}, [](const Json& d) {
                                   return d.is_object() && d.contains("text") && d["text"].is_string() &&
                                          !d["text"].get<std::string>().empty() &&
                                          d["text"].get<std::string>().size() <= kMaxAnswerChars;
                               });
    answer = sc.decision.at("text").get<std::string>();
    const bool success = state.succeeded();

    turn_log["routing"] = std::move(routing);
    turn_log["artifacts"] = std::move(artifact_records);
    turn_log["plan_revision"] = state.revision;
    turn_log["assistant_text"] = answer;
    turn_log["success"] = success;
    Turn t = finish_turn(started, std::move(answer), success, summary, observer);
    turn_log["duration_ms"] = t.duration_ms;
    turns_.push_back(std::move(turn_log));
    return t;
}

Json SupervisorAgent::rollout() const {
    if (turns_.empty()) throw ValidationError("dialog " + session_.dialog_id() + " has no turns");
    return Json{{"format", "supervisor-rollout/1"},
                {"dialog_id", session_.dialog_id()},
                {"category", to_string(session_.category())},
                {"architecture", to_string(session_.architecture())},
                {"turns", turns_}};
}

} // namespace

std::unique_ptr<DialogAgent> make_supervisor(AgentEnv& env, std::string dialog_id, Category category,
                                             bool parallel) {
    return std::make_unique<SupervisorAgent>(env, std::move(dialog_id), category, parallel);
}

} // namespace assetops
