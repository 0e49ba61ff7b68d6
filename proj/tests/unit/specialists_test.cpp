#include <gtest/gtest.h>

#include "assetops/agents/specialists.hpp"
#include "assetops/app/runner.hpp"

using namespace assetops;

namespace {

constexpr Timestamp kStart = sim::kFleetStart;

struct Rig {
    World world{WorldConfig{}};
    ArtifactStore store{"d"};
    BufferSink sink;
    int counter = 0;
    int turn = 1;

    SpecialistContext ctx(ExecMode mode = ExecMode::sequential) {
        SpecialistContext c;
        c.dialog_id = "d";
        c.turn_index = turn;
        c.store = &store;
        c.exec = ExecContext{&world.registry(), &world.clock(), &sink, {}, 30'000};
        c.mode = mode;
        c.next_call_id = [this] { return "d/c" + std::to_string(++counter); };
        return c;
    }

    SpecialistResult run(const Subtask& st, ExecMode mode = ExecMode::sequential) {
        auto c = ctx(mode);
        return run_specialist(st, c);
    }

    /// Puts a hand-made artifact with one slice and returns its id.
    std::string put(Specialist who, EvidenceKind kind, std::optional<TimeRange> range, Json payload,
                    std::map<std::string, Json> observations = {}, double confidence = 1.0) {
        Artifact a;
        a.artifact_id = store.next_id();
        a.dialog_id = "d";
        a.specialist = who;
        a.asset_id = "CH-01";
        a.evidence_kind = kind;
        a.time_range = range;
        a.observations = std::move(observations);
        a.confidence = confidence;
        a.slices.push_back(EvidenceSlice{"CH-01", kind, range, {}, std::move(payload)});
        return store.put(std::move(a));
    }
};

EvidenceRequest history(const std::string& channel, Timestamp from, Timestamp to) {
    return {"CH-01", EvidenceKind::sensor_history, TimeRange(from, to), {{"channel", channel}}};
}

Subtask task(Specialist who, std::vector<EvidenceRequest> reqs, std::vector<std::string> inputs = {}) {
    Subtask st;
    st.subtask_id = "s";
    st.specialist = who;
    st.requests = std::move(reqs);
    st.inputs = std::move(inputs);
    return st;
}

int fresh_calls(const SpecialistResult& r) { return static_cast<int>(r.calls.size()); }

Json alert(const std::string& id, Timestamp t, const std::string& code) {
    return Json{{"id", id}, {"timestamp", t}, {"severity", "high"}, {"text", "x"}, {"failure_code", code}};
}

} // namespace

TEST(DataCollection, FullCoverageIsPureReuse) {
    Rig rig;
    const auto req = history("supply_temp", kStart, kStart + 48 * kHourMs);
    const auto first = rig.run(task(Specialist::data_collection, {req}));
    ASSERT_TRUE(first.ok());
    EXPECT_EQ(fresh_calls(first), 1);
    const auto again = rig.run(task(Specialist::data_collection, {req}));
    ASSERT_TRUE(again.ok());
    EXPECT_EQ(fresh_calls(again), 0);
    const Artifact* a = rig.store.get(again.artifact_id);
    EXPECT_TRUE(a->invoked_tools.empty());
    EXPECT_EQ(a->reused_from, std::vector<std::string>{first.artifact_id});
    EXPECT_EQ(a->observations, rig.store.get(first.artifact_id)->observations);
}

TEST(DataCollection, PartialCoverageFetchesOnlyTheGap) {
    Rig rig;
    ASSERT_TRUE(rig.run(task(Specialist::data_collection, {history("power_kw", kStart, kStart + 60 * kHourMs)})).ok());
    const auto r = rig.run(task(Specialist::data_collection, {history("power_kw", kStart, kStart + 100 * kHourMs)}));
    ASSERT_TRUE(r.ok());
    ASSERT_EQ(fresh_calls(r), 1);
    const auto& call = r.calls[0].final_call();
    EXPECT_EQ(call.qualified_name(), "iot.get_sensor_history");
    EXPECT_EQ(call.args["start"], kStart + 60 * kHourMs);
    EXPECT_EQ(call.args["end"], kStart + 100 * kHourMs);
    const Artifact* a = rig.store.get(r.artifact_id);
    EXPECT_EQ(a->time_range, TimeRange(kStart, kStart + 100 * kHourMs));
    EXPECT_EQ(a->slices.front().payload["series"].size(), 100u);
}

TEST(DataCollection, ParallelBatchWallIsMaxLatency) {
    Rig rig;
    const Timestamp end = kStart + 72 * kHourMs;
    const auto r = rig.run(task(Specialist::data_collection,
                                {history("supply_temp", kStart, end), history("power_kw", kStart, end),
                                 EvidenceRequest{"CH-01", EvidenceKind::alerts, TimeRange(kStart, end), {}}}),
                           ExecMode::parallel);
    ASSERT_TRUE(r.ok());
    ASSERT_EQ(fresh_calls(r), 3);
    DurationMs longest = 0, total = 0;
    for (const auto& c : r.calls) {
        longest = std::max(longest, c.final_call().latency_ms);
        total += c.final_call().latency_ms;
    }
    EXPECT_EQ(r.batch_wall_ms, longest);
    EXPECT_LT(r.batch_wall_ms, total);
}

TEST(DataCollection, OneArtifactPerSuccess) {
    Rig rig;
    for (int i = 1; i <= 3; ++i) {
        const auto before = rig.store.size();
        const auto r = rig.run(task(Specialist::data_collection,
                                    {history("condenser_temp", kStart, kStart + i * 24 * kHourMs)}));
        ASSERT_TRUE(r.ok());
        EXPECT_EQ(rig.store.size(), before + 1);
    }
}

TEST(TimeSeries, RepeatedForecastIsReusedNewHorizonIsNot) {
    Rig rig;
    const TimeRange w(kStart + 10 * kDayMs, kStart + 17 * kDayMs);
    EvidenceRequest f{"CH-01", EvidenceKind::forecast, w, {{"channel", "power_kw"}, {"horizon", 24}}};
    ASSERT_EQ(fresh_calls(rig.run(task(Specialist::time_series, {f}))), 1);
    EXPECT_EQ(fresh_calls(rig.run(task(Specialist::time_series, {f}))), 0);
    f.params["horizon"] = 48;
    const auto r = rig.run(task(Specialist::time_series, {f}));
    ASSERT_EQ(fresh_calls(r), 1);
    EXPECT_EQ(r.calls[0].final_call().qualified_name(), "tsfm.forecast");
}

TEST(TimeSeries, InjectedAnomalyScoresAboveThreshold) {
    Rig rig;
    const auto& fleet = rig.world.fleet();
    const sim::AnomalyWindow* win = nullptr;
    for (const auto& a : fleet.anomalies)
        if (a.asset_id == "CH-01") win = &a;
    ASSERT_NE(win, nullptr);
    const TimeRange range(win->range.start() - kDayMs, win->range.end() + kDayMs);
    EvidenceRequest q{"CH-01", EvidenceKind::anomaly_scores, range, {{"channel", win->channel}}};
    const auto r = rig.run(task(Specialist::time_series, {q}));
    ASSERT_TRUE(r.ok());
    const Artifact* a = rig.store.get(r.artifact_id);
    EXPECT_GE(a->observations.at("anomaly." + win->channel + ".max_score").get<double>(), kAnomalyThreshold);
}

TEST(FailureReasoning, AnomalyPlusCodedAlertRanksThatCode) {
    Rig rig;
    const Timestamp t = kStart + 30 * kDayMs;
    const auto scores = rig.put(Specialist::time_series, EvidenceKind::anomaly_scores,
                                TimeRange(t - kDayMs, t + kDayMs), Json{{"series", {{t, 0.9}, {t + kHourMs, 0.2}}}});
    const auto alerts = rig.put(Specialist::data_collection, EvidenceKind::alerts, TimeRange(t - kDayMs, t + kDayMs),
                                Json{{"items", {alert("AL-1", t + 2 * kHourMs, "C12")}}});
    const auto r = rig.run(task(Specialist::failure_reasoning, {}, {scores, alerts}));
    ASSERT_TRUE(r.ok()) << r.failure_detail;
    const Artifact* a = rig.store.get(r.artifact_id);
    EXPECT_EQ(a->observations.at("top_code"), "C12");
    EXPECT_EQ(a->observations.at("top_description"), rig.world.fleet().failure_codes.at("C12").description);
    EXPECT_DOUBLE_EQ(a->confidence, failure_confidence(2));
}

TEST(FailureReasoning, NoCandidatesIsInsufficientEvidence) {
    Rig rig;
    const Timestamp t = kStart + 30 * kDayMs;
    const auto alerts = rig.put(Specialist::data_collection, EvidenceKind::alerts, TimeRange(t, t + kDayMs),
                                Json{{"items", {alert("AL-1", t, "")}}});
    const auto before = rig.store.size();
    const auto r = rig.run(task(Specialist::failure_reasoning, {}, {alerts}));
    EXPECT_EQ(r.failure, SubtaskFailure::insufficient_evidence);
    EXPECT_TRUE(r.artifact_id.empty());
    EXPECT_EQ(rig.store.size(), before);
}

TEST(FailureReasoning, RankedByCorroboration) {
    Rig rig;
    const Timestamp t = kStart + 40 * kDayMs;
    const auto alerts = rig.put(Specialist::data_collection, EvidenceKind::alerts, TimeRange(t, t + kDayMs),
                                Json{{"items",
                                      {alert("AL-1", t + 1 * kHourMs, "C30"), alert("AL-2", t + 2 * kHourMs, "C15"),
                                       alert("AL-3", t + 3 * kHourMs, "C15"), alert("AL-4", t + 4 * kHourMs, "C15")}}});
    const auto r = rig.run(task(Specialist::failure_reasoning, {}, {alerts}));
    ASSERT_TRUE(r.ok());
    const auto& ranked = rig.store.get(r.artifact_id)->intermediate_results.at("ranked");
    ASSERT_EQ(ranked.size(), 2u);
    EXPECT_EQ(ranked[0]["code"], "C15");
    EXPECT_EQ(ranked[0]["corroborating"], 3);
    EXPECT_EQ(ranked[1]["code"], "C30");
}

TEST(FailureConfidence, CappedFormula) {
    EXPECT_DOUBLE_EQ(failure_confidence(0), 0.5);
    EXPECT_DOUBLE_EQ(failure_confidence(3), 0.8);
    EXPECT_DOUBLE_EQ(failure_confidence(10), 0.95);
}

TEST(MaintenancePlanning, CatalogActionVerbatimAndHigherConfidenceWins) {
    Rig rig;
    const auto low = rig.put(Specialist::failure_reasoning, EvidenceKind::failure_codes, std::nullopt, Json::object(),
                             {{"top_code", "C12"}, {"top_action", "recharge"}, {"top_description", "low charge"}}, 0.6);
    const auto high = rig.put(Specialist::failure_reasoning, EvidenceKind::failure_codes, std::nullopt, Json::object(),
                              {{"top_code", "C30"},
                               {"top_action", rig.world.fleet().failure_codes.at("C30").recommended_action},
                               {"top_description", "drift"}},
                              0.9);
    const TimeRange lookback(sim::kFleetStart, sim::kFleetStart + sim::kFleetDays * kDayMs);
    const auto r = rig.run(task(Specialist::maintenance_planning,
                                {EvidenceRequest{"CH-01", EvidenceKind::work_orders, lookback, {}}}, {low, high}));
    ASSERT_TRUE(r.ok()) << r.failure_detail;
    const Artifact* a = rig.store.get(r.artifact_id);
    EXPECT_EQ(a->observations.at("failure_code"), "C30");
    EXPECT_EQ(a->observations.at("recommended_action"), "replace sensor");
    EXPECT_DOUBLE_EQ(a->confidence, 0.9);
}

TEST(MaintenancePlanning, NoPriorWorkOrdersStillSucceeds) {
    Rig rig;
    const auto diag = rig.put(Specialist::failure_reasoning, EvidenceKind::failure_codes, std::nullopt, Json::object(),
                              {{"top_code", "C12"}, {"top_action", "recharge"}, {"top_description", "low charge"}});
    // One hour at the very start of the window holds no work orders.
    const TimeRange empty(sim::kFleetStart, sim::kFleetStart + kHourMs);
    const auto r = rig.run(task(Specialist::maintenance_planning,
                                {EvidenceRequest{"CH-01", EvidenceKind::work_orders, empty, {}}}, {diag}));
    ASSERT_TRUE(r.ok()) << r.failure_detail;
    EXPECT_EQ(rig.store.get(r.artifact_id)->observations.at("prior_work_order"), "none");
}

TEST(MaintenancePlanning, NeedsDiagnosis) {
    Rig rig;
    const auto r = rig.run(task(Specialist::maintenance_planning, {}, {}));
    EXPECT_EQ(r.failure, SubtaskFailure::missing_input);
}

TEST(CallForRequest, MapsKindsToCatalogTools) {
    const TimeRange w(kStart, kStart + kDayMs);
    EXPECT_EQ(call_for_request(history("power_kw", w.start(), w.end())).qualified_name(), "iot.get_sensor_history");
    EXPECT_EQ(call_for_request({"CH-01", EvidenceKind::alerts, w, {}}).qualified_name(), "events.query_alerts");
    EXPECT_EQ(call_for_request({"CH-01", EvidenceKind::site_metadata, std::nullopt, {}}).qualified_name(),
              "utilities.site_metadata");
    EXPECT_THROW(call_for_request({"CH-01", EvidenceKind::maintenance_plan, w, {}}), ValidationError);
    EXPECT_THROW(call_for_request({"CH-01", EvidenceKind::sensor_history, std::nullopt, {{"channel", "x"}}}),
                 ValidationError);
}
