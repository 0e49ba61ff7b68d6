#include "assetops/exec/engine.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <thread>

namespace assetops {

DurationMs busy_union(std::vector<Interval> intervals) {
    std::erase_if(intervals, [](const Interval& i) { return i.end <= i.start; });
    std::sort(intervals.begin(), intervals.end(),
              [](const Interval& a, const Interval& b) { return a.start < b.start; });
    DurationMs total = 0;
    bool open = false;
    Timestamp cs = 0, ce = 0;
    for (const auto& i : intervals) {
        if (!open || i.start > ce) {
            if (open) total += ce - cs;
            cs = i.start;
            ce = i.end;
            open = true;
        } else {
            ce = std::max(ce, i.end);
        }
    }
    if (open) total += ce - cs;
    return total;
}

std::string_view to_string(ExecMode m) { return m == ExecMode::parallel ? "parallel" : "sequential"; }

void RecoveryPolicy::validate() const {
    if (max_retries < 0 || repair_attempts < 0 || backoff_ms < 0)
        throw ValidationError("recovery policy fields must be non-negative");
}

std::string_view to_string(RecoveryAction a) {
    switch (a) {
    case RecoveryAction::retry: return "retry";
    case RecoveryAction::argument_repair: return "argument-repair";
    case RecoveryAction::replan_escalation: return "replan-escalation";
    }
    return "unknown";
}

RecoveryAction recovery_action_from_string(std::string_view s) {
    if (s == "retry") return RecoveryAction::retry;
    if (s == "argument-repair") return RecoveryAction::argument_repair;
    if (s == "replan-escalation") return RecoveryAction::replan_escalation;
    throw ValidationError("unknown recovery action '" + std::string(s) + "'");
}

Json RecoveryRecord::to_json() const {
    Json a = Json::array();
    for (auto x : actions) a.push_back(to_string(x));
    return Json{{"call_id", call_id}, {"actions", a}, {"final_status", to_string(final_status)}};
}

RecoveryRecord RecoveryRecord::from_json(const Json& j) {
    RecoveryRecord r;
    r.call_id = j.at("call_id").get<std::string>();
    for (const auto& a : j.at("actions")) r.actions.push_back(recovery_action_from_string(a.get<std::string>()));
    r.final_status = tool_status_from_string(j.at("final_status").get<std::string>());
    return r;
}

std::vector<ToolResult> BatchResult::results() const {
    std::vector<ToolResult> out;
    for (const auto& o : outcomes) out.push_back(o.result);
    return out;
}

std::vector<RecoveryRecord> BatchResult::records() const {
    std::vector<RecoveryRecord> out;
    for (const auto& o : outcomes) out.push_back(o.recovery);
    return out;
}

bool BatchResult::all_ok() const {
    return std::all_of(outcomes.begin(), outcomes.end(), [](const CallOutcome& o) { return o.ok(); });
}

namespace {

std::string attempt_id(const std::string& base, std::size_t n) {
    return n <= 1 ? base : base + "/a" + std::to_string(n);
}

/// Longest-path level of every call; throws on cycles or unknown ids.
std::vector<int> dependency_levels(const ExecutionBatch& batch) {
    const std::size_t n = batch.calls.size();
    std::map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < n; ++i)
        if (!pos.emplace(batch.calls[i].call_id, i).second)
            throw ValidationError("duplicate call id in batch: " + batch.calls[i].call_id);
    std::vector<std::vector<std::size_t>> out(n);
    std::vector<int> indeg(n, 0);
    for (const auto& [from, to] : batch.edges) {
        auto f = pos.find(from), t = pos.find(to);
        if (f == pos.end() || t == pos.end())
            throw ValidationError("dependency edge references unknown call " + (f == pos.end() ? from : to));
        if (batch.mode == ExecMode::sequential && f->second >= t->second)
            throw ValidationError("sequential batch order contradicts edge " + from + " -> " + to);
        out[f->second].push_back(t->second);
        ++indeg[t->second];
    }
    std::vector<int> level(n, 0);
    std::vector<std::size_t> ready;
    for (std::size_t i = 0; i < n; ++i)
        if (indeg[i] == 0) ready.push_back(i);
    std::size_t seen = 0;
    while (!ready.empty()) {
        const std::size_t i = ready.back();
        ready.pop_back();
        ++seen;
        for (auto j : out[i]) {
            level[j] = std::max(level[j], level[i] + 1);
            if (--indeg[j] == 0) ready.push_back(j);
        }
    }
    if (seen != n) throw ValidationError("dependency cycle in execution batch");
    return level;
}

struct Chain {
    CallOutcome outcome;
    bool dispatchable = false;
    std::uint64_t first_sequence = 0;
    BufferSink events;
    DurationMs elapsed = 0;
};

void prepare(Chain& chain, const ToolCall& original, const RecoveryPolicy& policy, const ExecContext& ctx) {
    ToolCall current = original;
    current.call_id = attempt_id(original.call_id, 1);
    chain.outcome.recovery.call_id = original.call_id;
    int repairs_left = policy.repair_attempts;
    while (true) {
        std::vector<Violation> violations;
        if (!ctx.registry->validate_name(current)) current.status = ToolStatus::invalid_name;
        else if (violations = ctx.registry->validate_schema(current); !violations.empty())
            current.status = ToolStatus::schema_violation;
        else {
            current.status = ToolStatus::ok;
            break;
        }
        std::string detail = current.status == ToolStatus::invalid_name
                                 ? "unknown tool " + current.qualified_name()
                                 : std::string();
        for (const auto& v : violations) detail += (detail.empty() ? "" : ", ") + v.to_string();
        current.error_detail = detail;
        current.latency_ms = 0;
        current.started_at = ctx.clock->now();
        chain.outcome.attempts.push_back(current);

        std::optional<ToolCall> fixed;
        if (repairs_left > 0 && ctx.repairer) {
            --repairs_left;
            fixed = ctx.repairer(current, violations);
        }
        if (!fixed) {
            chain.outcome.recovery.actions.push_back(RecoveryAction::replan_escalation);
            chain.outcome.recovery.final_status = current.status;
            return;
        }
        chain.outcome.recovery.actions.push_back(RecoveryAction::argument_repair);
        ToolCall next = *fixed;
        next.call_id = attempt_id(original.call_id, chain.outcome.attempts.size() + 1);
        next.dialog_id = original.dialog_id;
        next.turn_index = original.turn_index;
        next.error_detail.reset();
        current = std::move(next);
    }
    chain.outcome.attempts.push_back(current);
    chain.dispatchable = true;
    chain.first_sequence = ctx.registry->reserve_sequence(current.server, 1 + policy.max_retries);
}

void dispatch(Chain& chain, const RecoveryPolicy& policy, const ExecContext& ctx, Timestamp start) {
    Timestamp cursor = start;
    int retries_left = policy.max_retries;
    for (std::uint64_t k = 0;; ++k) {
        ToolCall& call = chain.outcome.attempts.back();
        InvokeOptions opt;
        opt.clock = ctx.clock;
        opt.sink = &chain.events;
        opt.start_at = cursor;
        opt.budget_ms = ctx.call_budget_ms;
        opt.sequence = chain.first_sequence + k;
        chain.outcome.result = ctx.registry->invoke(call, opt);
        cursor = call.started_at + call.latency_ms;
        if (call.status == ToolStatus::ok) break;
        if (retries_left == 0) {
            chain.outcome.recovery.actions.push_back(RecoveryAction::replan_escalation);
            break;
        }
        --retries_left;
        chain.outcome.recovery.actions.push_back(RecoveryAction::retry);
        if (policy.backoff_ms > 0) {
            if (ctx.clock->is_virtual()) cursor += policy.backoff_ms;
            else std::this_thread::sleep_for(std::chrono::milliseconds(policy.backoff_ms));
        }
        ToolCall next = call;
        next.call_id = attempt_id(chain.outcome.recovery.call_id, chain.outcome.attempts.size() + 1);
        next.error_detail.reset();
        next.status = ToolStatus::ok;
        next.latency_ms = 0;
        chain.outcome.attempts.push_back(std::move(next));
    }
    chain.outcome.recovery.final_status = chain.outcome.attempts.back().status;
    chain.elapsed = ctx.clock->is_virtual() ? cursor - start : 0;
}

} // namespace

BatchResult execute_batch(const ExecutionBatch& batch, const RecoveryPolicy& policy, const ExecContext& ctx) {
    if (!ctx.registry || !ctx.clock || !ctx.sink) throw ValidationError("execution context incomplete");
    policy.validate();
    const std::vector<int> level = dependency_levels(batch);
    const std::size_t n = batch.calls.size();

    std::vector<Chain> chains(n);
    for (std::size_t i = 0; i < n; ++i) prepare(chains[i], batch.calls[i], policy, ctx);

    const bool virtual_time = ctx.clock->is_virtual();
    BatchResult out;
    out.started_at = ctx.clock->now();
    Timestamp cursor = out.started_at;

    if (batch.mode == ExecMode::sequential) {
        for (auto& c : chains) {
            if (!c.dispatchable) continue;
            dispatch(c, policy, ctx, virtual_time ? cursor : ctx.clock->now());
            cursor += c.elapsed;
        }
    } else {
        const int waves = n == 0 ? 0 : *std::max_element(level.begin(), level.end()) + 1;
        for (int w = 0; w < waves; ++w) {
            const Timestamp wave_start = virtual_time ? cursor : ctx.clock->now();
            std::vector<std::future<void>> running;
            for (std::size_t i = 0; i < n; ++i) {
                if (level[i] != w || !chains[i].dispatchable) continue;
                running.push_back(std::async(std::launch::async, [&, i] {
                    dispatch(chains[i], policy, ctx, virtual_time ? wave_start : ctx.clock->now());
                }));
            }
            for (auto& f : running) f.get();
            DurationMs longest = 0;
            for (std::size_t i = 0; i < n; ++i)
                if (level[i] == w) longest = std::max(longest, chains[i].elapsed);
            cursor += longest;
        }
    }

    if (virtual_time) {
        out.wall_ms = cursor - out.started_at;
        ctx.clock->elapse(out.wall_ms);
    } else {
        out.wall_ms = ctx.clock->now() - out.started_at;
    }
    for (auto& c : chains) {
        c.events.flush_to(*ctx.sink);
        if (!c.dispatchable) c.outcome.result = ToolResult{c.outcome.attempts.back().call_id, Json(), 0};
        out.outcomes.push_back(std::move(c.outcome));
    }
    return out;
}

CallOutcome run_with_recovery(const ToolCall& call, const RecoveryPolicy& policy, const ExecContext& ctx) {
    ExecutionBatch b;
    b.calls.push_back(call);
    return std::move(execute_batch(b, policy, ctx).outcomes.front());
}

} // namespace assetops
