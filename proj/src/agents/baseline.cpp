#include <algorithm>

#include "assetops/agents/agent.hpp"
#include "assetops/agents/synthesis.hpp"
#include "assetops/sim/rng.hpp"

namespace assetops {

namespace {

/// How the hallucination knob corrupts its chosen call.
enum class Perturbation { rename_param, stringly_number, invalid_name };

class BaselineAgent final : public DialogAgent {
public:
    BaselineAgent(AgentEnv& env, std::string dialog_id, Category category)
        : DialogAgent(env, dialog_id, category, Architecture::plan_execute, false) {
        const std::uint64_t h = sim::mix64(env.seed, sim::stable_hash(dialog_id + "/hallucinate"));
        if (sim::unit_interval(h) < env.hallucination_rate) {
            target_call_ = static_cast<int>(sim::mix64(h, 1) % 4);
            perturbation_ = static_cast<Perturbation>(sim::mix64(h, 2) % 3);
        }
    }

    Turn run_turn(const std::string& user_text, const TurnObserver& observer) override;
    Json rollout() const override;

private:
    void perturb(ToolCall& call) {
        if (planned_calls_++ != target_call_) return;
        Perturbation p = perturbation_;
        if (p == Perturbation::stringly_number && !call.args.contains("start")) p = Perturbation::rename_param;
        if (p == Perturbation::rename_param && !call.args.contains("asset_id")) p = Perturbation::invalid_name;
        switch (p) {
        case Perturbation::rename_param:
            call.args["asset"] = call.args["asset_id"];
            call.args.erase("asset_id");
            break;
        case Perturbation::stringly_number:
            call.args["start"] = std::to_string(call.args["start"].get<Timestamp>());
            break;
        case Perturbation::invalid_name:
            call.tool = call.tool == "get_sensor_history" ? "get_sensor_data_v2" : call.tool + "_v2";
            break;
        }
    }

    Json transcript_ = Json::array();
    Json events_ = Json::array();
    std::vector<std::string> evidence_log_;
    int target_call_ = -1;
    Perturbation perturbation_ = Perturbation::rename_param;
    int planned_calls_ = 0;
};

Turn BaselineAgent::run_turn(const std::string& user_text, const TurnObserver& observer) {
    const Timestamp started = env_.clock->now();
    session_.begin_turn(user_text, env_.turn_counter->next());
    current_turn_ = static_cast<int>(session_.turns().size());
    events_.push_back(Json{{"type", "user"}, {"turn", current_turn_}, {"text", user_text}});
    transcript_.push_back(Json{{"role", "user"}, {"text", user_text}});
    TurnSummary summary;

    const Intent intent = interpret_intent_rules(user_text, intents_, env_.data_window.end());
    intents_.push_back(intent);
    PlanState state = plan_template(intent, env_.data_window.end());

    // One flat plan per turn; evidence requests become calls with no
    // coverage check.
    Json flat = Json::array();
    for (const auto& n : state.nodes) {
        if (n.subtask.specialist == Specialist::failure_reasoning) {
            flat.push_back(Json{{"tool", "fmsr.map_failure_codes"}});
            continue;
        }
        for (const auto& r : n.subtask.requests) {
            const ToolCall c = call_for_request(r);
            flat.push_back(Json{{"tool", c.qualified_name()}, {"args", c.args}});
        }
    }
    consult(LlmPurpose::plan, Json{{"transcript", transcript_}},
            Json{{"intent", intent.to_json()}, {"calls", flat}}, [](const Json&) { return false; });
    if (observer) observer(Json{{"type", "intent"}, {"turn", current_turn_}, {"intent", intent.to_json()}});

    SpecialistContext sctx = specialist_context(ExecMode::sequential);
    sctx.mutate_call = [this](ToolCall& c) { perturb(c); };
    bool stopped = false;
    while (!stopped) {
        const auto idx = route_next(state);
        if (!idx) break;
        PlanNode& node = state.nodes[*idx];
        node.subtask.inputs = dependency_artifacts(state, node);
        if (observer)
            observer(Json{{"type", "routing"},
                          {"turn", current_turn_},
                          {"subtask_id", node.subtask.subtask_id},
                          {"specialist", to_string(node.subtask.specialist)},
                          {"goal", node.subtask.goal},
                          {"precompleted", false}});
        SpecialistResult r = run_specialist(node.subtask, sctx);
        for (const auto& c : r.calls) {
            for (const auto& a : c.attempts) {
                ++summary.tool_calls;
                events_.push_back(Json{{"type", "tool"},
                                       {"turn", current_turn_},
                                       {"call", a.call_id},
                                       {"name", a.qualified_name()},
                                       {"arguments", a.args},
                                       {"outcome", to_string(a.status)},
                                       {"elapsed_ms", a.latency_ms},
                                       {"error", a.error_detail ? Json(*a.error_detail) : Json()}});
                if (observer)
                    observer(Json{{"type", "tool_call"},
                                  {"turn", current_turn_},
                                  {"subtask_id", node.subtask.subtask_id},
                                  {"call_id", a.call_id},
                                  {"server", a.server},
                                  {"tool", a.tool},
                                  {"status", to_string(a.status)},
                                  {"latency_ms", a.latency_ms}});
            }
            if (!c.recovery.actions.empty()) {
                Json acts = Json::array();
                for (auto a : c.recovery.actions) acts.push_back(to_string(a));
                events_.push_back(Json{{"type", "recovery"},
                                       {"turn", current_turn_},
                                       {"call", c.recovery.call_id},
                                       {"actions", acts},
                                       {"final", to_string(c.recovery.final_status)}});
            }
            transcript_.push_back(Json{{"role", "tool"},
                                       {"name", c.final_call().qualified_name()},
                                       {"args", c.final_call().args},
                                       {"status", to_string(c.final_call().status)},
                                       {"output", c.result.payload}});
        }
        if (r.ok()) {
            node.status = NodeStatus::completed;
            node.artifact_id = r.artifact_id;
        } else {
            // No replanning: the plan runs once, in order.
            node.status = NodeStatus::failed;
            node.failure = r.failure;
            node.failure_detail = r.failure_detail;
            stopped = true;
        }
    }

    std::vector<const Artifact*> used;
    for (const auto& n : state.nodes) {
        if (n.artifact_id.empty()) continue;
        const Artifact* a = store_.get(n.artifact_id);
        used.push_back(a);
        summary.artifact_ids.push_back(n.artifact_id);
        ++summary.artifacts_total;
        evidence_log_.push_back("turn " + std::to_string(current_turn_) + ": " + summarize_artifact(*a));
    }
    SynthesisOptions unbounded;
    unbounded.bounded = false;
    std::string answer = synthesize(intent, used, &state, unbounded);
    if (!intent.needs_clarification && !evidence_log_.empty()) {
        answer += "\nEvidence appendix (all turns):\n";
        for (const auto& e : evidence_log_) answer += "- " + e + "\n";
    }
    consult(LlmPurpose::synthesize, Json{{"transcript", transcript_}}, Json{{"text", answer}},
            [](const Json&) { return false; });
    const bool success = !intent.needs_clarification && state.succeeded();
    transcript_.push_back(Json{{"role", "assistant"}, {"text", answer}});
    events_.push_back(Json{{"type", "assistant"}, {"turn", current_turn_}, {"text", answer}, {"ok", success}});
    return finish_turn(started, std::move(answer), success, summary, observer);
}

Json BaselineAgent::rollout() const {
    if (session_.turns().empty()) throw ValidationError("dialog " + session_.dialog_id() + " has no turns");
    return Json{{"run",
                 {{"id", session_.dialog_id()},
                  {"category", to_string(session_.category())},
                  {"arch", to_string(session_.architecture())}}},
                {"events", events_}};
}

} // namespace

std::unique_ptr<DialogAgent> make_baseline(AgentEnv& env, std::string dialog_id, Category category) {
    return std::make_unique<BaselineAgent>(env, std::move(dialog_id), category);
}

} // namespace assetops
