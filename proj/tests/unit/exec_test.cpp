#include <gtest/gtest.h>

#include <random>

#include "assetops/exec/engine.hpp"
#include "fakes.hpp"
#include "oracles.hpp"

using namespace assetops;

namespace {

struct Rig {
    std::shared_ptr<fakes::ScriptedServer> server = std::make_shared<fakes::ScriptedServer>(
        "srv", std::vector<ToolSchema>{fakes::echo_schema("srv", "t")}, 100);
    ToolRegistry registry;
    Clock clock{ClockMode::virtual_time, 1000};
    BufferSink sink;
    Rig() { registry.register_server(server); }
    ExecContext ctx(Repairer r = {}) { return ExecContext{&registry, &clock, &sink, std::move(r), 30'000}; }
};

ExecutionBatch four_calls(ExecMode mode) {
    ExecutionBatch b;
    b.mode = mode;
    int i = 0;
    for (DurationMs ms : {80, 90, 100, 120})
        b.calls.push_back(fakes::make_call("c" + std::to_string(++i), "srv", "t", {{"asset_id", "A"}, {"latency_ms", ms}}));
    return b;
}

} // namespace

TEST(BusyUnion, Basics) {
    EXPECT_EQ(busy_union({}), 0);
    EXPECT_EQ(busy_union({{0, 100}, {50, 150}}), 150);
    EXPECT_EQ(busy_union({{0, 10}, {20, 30}}), 20);
}

TEST(BusyUnion, RandomCasesMatchOracle) {
    std::mt19937_64 gen(5);
    std::uniform_int_distribution<int> coord(0, 1000);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<Interval> iv;
        std::vector<oracle::Span> sp;
        for (int k = 0; k < 10; ++k) {
            int s = coord(gen), e = coord(gen);
            if (s > e) std::swap(s, e);
            iv.push_back({s, e});
            sp.emplace_back(s, e);
        }
        ASSERT_EQ(busy_union(iv), oracle::union_length(sp));
    }
}

TEST(ExecuteBatch, ParallelIsMaxSequentialIsSum) {
    Rig p;
    auto rp = execute_batch(four_calls(ExecMode::parallel), {}, p.ctx());
    EXPECT_EQ(rp.wall_ms, 120);
    EXPECT_EQ(p.clock.now(), 1120);
    Rig s;
    auto rs = execute_batch(four_calls(ExecMode::sequential), {}, s.ctx());
    EXPECT_EQ(rs.wall_ms, 390);
    EXPECT_EQ(s.clock.now(), 1390);
    // Sequential calls start back to back.
    EXPECT_EQ(rs.outcomes[1].final_call().started_at, 1080);
    EXPECT_EQ(rs.outcomes[3].final_call().started_at, 1270);
}

TEST(ExecuteBatch, SingleCallSameInBothModes) {
    for (auto mode : {ExecMode::sequential, ExecMode::parallel}) {
        Rig r;
        ExecutionBatch b;
        b.mode = mode;
        b.calls.push_back(fakes::make_call("x", "srv", "t", {{"asset_id", "A"}, {"latency_ms", 77}}));
        EXPECT_EQ(execute_batch(b, {}, r.ctx()).wall_ms, 77);
    }
}

TEST(ExecuteBatch, ResultsInSubmissionOrder) {
    Rig r;
    auto b = four_calls(ExecMode::parallel);
    b.calls[2].args["latency_ms"] = 1;  // finishes first
    auto res = execute_batch(b, {}, r.ctx());
    for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(res.outcomes[i].recovery.call_id, "c" + std::to_string(i + 1));
    auto events = r.sink.take();
    ASSERT_EQ(events.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i)
        EXPECT_EQ(std::get<ToolEventInfo>(events[i].detail).call_id, "c" + std::to_string(i + 1));
}

TEST(ExecuteBatch, WallBetweenMaxAndSum) {
    std::mt19937 gen(8);
    std::uniform_int_distribution<int> lat(1, 500), count(1, 6);
    for (int trial = 0; trial < 40; ++trial) {
        for (auto mode : {ExecMode::sequential, ExecMode::parallel}) {
            Rig r;
            ExecutionBatch b;
            b.mode = mode;
            DurationMs sum = 0, mx = 0;
            for (int k = count(gen); k > 0; --k) {
                DurationMs ms = lat(gen);
                sum += ms;
                mx = std::max(mx, ms);
                b.calls.push_back(fakes::make_call("c" + std::to_string(k), "srv", "t", {{"asset_id", "A"}, {"latency_ms", ms}}));
            }
            auto res = execute_batch(b, {}, r.ctx());
            EXPECT_EQ(res.wall_ms, mode == ExecMode::parallel ? mx : sum);
        }
    }
}

TEST(ExecuteBatch, DependencyWaves) {
    Rig r;
    auto b = four_calls(ExecMode::parallel);
    b.edges = {{"c1", "c4"}};
    // Wave 1: c1, c2, c3 (max 100); wave 2: c4 (120).
    EXPECT_EQ(execute_batch(b, {}, r.ctx()).wall_ms, 220);
}

TEST(ExecuteBatch, CycleRejectedBeforeDispatch) {
    Rig r;
    auto b = four_calls(ExecMode::parallel);
    b.edges = {{"c1", "c2"}, {"c2", "c1"}};
    EXPECT_THROW(execute_batch(b, {}, r.ctx()), ValidationError);
    EXPECT_EQ(r.server->calls(), 0);
    auto s = four_calls(ExecMode::sequential);
    s.edges = {{"c3", "c1"}};
    EXPECT_THROW(execute_batch(s, {}, r.ctx()), ValidationError);
}

TEST(Recovery, FailThenOkRetriesOnce) {
    Rig r;
    r.server->push_outcomes({false, true});
    auto out = run_with_recovery(fakes::make_call("c", "srv", "t", {{"asset_id", "A"}}), {}, r.ctx());
    EXPECT_TRUE(out.ok());
    EXPECT_EQ(out.recovery.actions, (std::vector<RecoveryAction>{RecoveryAction::retry}));
    ASSERT_EQ(out.attempts.size(), 2u);
    EXPECT_EQ(out.attempts[1].call_id, "c/a2");
    EXPECT_EQ(out.attempts[1].started_at, out.attempts[0].started_at + 100);
}

TEST(Recovery, ExhaustedRetriesEscalate) {
    Rig r;
    r.server->push_outcomes({false, false, false, false});
    auto out = run_with_recovery(fakes::make_call("c", "srv", "t", {{"asset_id", "A"}}), {}, r.ctx());
    EXPECT_FALSE(out.ok());
    EXPECT_EQ(out.recovery.actions, (std::vector<RecoveryAction>{RecoveryAction::retry, RecoveryAction::retry,
                                                                  RecoveryAction::replan_escalation}));
    EXPECT_EQ(out.recovery.final_status, ToolStatus::execution_failure);
    EXPECT_EQ(r.server->calls(), 3);
}

TEST(Recovery, RepairSuppliesMissingField) {
    Rig r;
    int consults = 0;
    auto repair = [&](const ToolCall& c, const std::vector<Violation>& v) -> std::optional<ToolCall> {
        ++consults;
        EXPECT_EQ(v.at(0).to_string(), "missing:asset_id");
        ToolCall fixed = c;
        fixed.args["asset_id"] = "A";
        return fixed;
    };
    auto out = run_with_recovery(fakes::make_call("c", "srv", "t", Json::object()), {}, r.ctx(repair));
    EXPECT_TRUE(out.ok());
    EXPECT_EQ(consults, 1);
    EXPECT_EQ(out.recovery.actions, (std::vector<RecoveryAction>{RecoveryAction::argument_repair}));
    EXPECT_EQ(out.attempts.front().status, ToolStatus::schema_violation);
}

TEST(Recovery, UnrepairableCallIsNeverDispatched) {
    Rig r;
    auto out = run_with_recovery(fakes::make_call("c", "srv", "missing", {{"asset_id", "A"}}), {}, r.ctx());
    EXPECT_EQ(out.recovery.final_status, ToolStatus::invalid_name);
    EXPECT_EQ(out.recovery.actions, (std::vector<RecoveryAction>{RecoveryAction::replan_escalation}));
    EXPECT_EQ(r.server->calls(), 0);
    EXPECT_TRUE(r.sink.take().empty());
}

TEST(Recovery, AttemptsBounded) {
    std::mt19937 gen(4);
    for (int trial = 0; trial < 50; ++trial) {
        Rig r;
        RecoveryPolicy p{static_cast<int>(gen() % 4), static_cast<int>(gen() % 3), 0};
        for (int k = 0; k < 10; ++k) r.server->push_outcomes({gen() % 3 == 0});
        auto repair = [](const ToolCall& c, const std::vector<Violation>&) -> std::optional<ToolCall> {
            ToolCall f = c;
            f.args = Json{{"asset_id", "A"}};
            return f;
        };
        auto out = run_with_recovery(fakes::make_call("c", "srv", "t", {{"bogus", 1}}), p, r.ctx(repair));
        EXPECT_LE(static_cast<int>(out.attempts.size()), 1 + p.max_retries + p.repair_attempts);
        if (!out.recovery.actions.empty()) EXPECT_NE(out.attempts.front().status, ToolStatus::ok);
    }
}

TEST(Recovery, RecordJsonRoundTrip) {
    RecoveryRecord rec{"c", {RecoveryAction::retry, RecoveryAction::replan_escalation}, ToolStatus::timeout};
    EXPECT_EQ(RecoveryRecord::from_json(rec.to_json()).to_json(), rec.to_json());
}
