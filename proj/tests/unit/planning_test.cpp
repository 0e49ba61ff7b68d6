#include <gtest/gtest.h>

#include "assetops/agents/repair.hpp"
#include "assetops/agents/synthesis.hpp"
#include "assetops/app/runner.hpp"

using namespace assetops;

namespace {

const Timestamp kEnd = sim::kFleetStart + sim::kFleetDays * kDayMs;

Intent intent_of(std::string_view text, const std::vector<Intent>& history = {}) {
    return interpret_intent_rules(text, history, kEnd);
}

Intent fault_intent() { return intent_of("Is chiller CH-01 overheating this week?"); }

SpecialistResult ok_result(const std::string& id) {
    SpecialistResult r;
    r.artifact_id = id;
    return r;
}

SpecialistResult insufficient() {
    SpecialistResult r;
    r.failure = SubtaskFailure::insufficient_evidence;
    r.failure_detail = "no codes";
    return r;
}

Artifact diagnosis(const std::string& id, const std::string& code) {
    Artifact a;
    a.artifact_id = id;
    a.dialog_id = "d";
    a.specialist = Specialist::failure_reasoning;
    a.asset_id = "CH-01";
    a.evidence_kind = EvidenceKind::failure_codes;
    a.confidence = 0.8;
    a.observations = {{"top_code", code},
                      {"top_description", "Low refrigerant charge"},
                      {"top_action", "Leak-test the refrigerant circuit"},
                      {"candidate_count", 1},
                      {"corroborating", 3},
                      {"abnormal_points", 12},
                      {"window_start", "2024-03-25 00:00"},
                      {"window_end", "2024-03-26 00:00"}};
    return a;
}

Artifact history_artifact(int i) {
    Artifact a;
    a.artifact_id = "d/art-" + std::to_string(100 + i);
    a.dialog_id = "d";
    a.asset_id = "CH-0" + std::to_string(1 + i % 6);
    a.evidence_kind = EvidenceKind::sensor_history;
    a.time_range = TimeRange(kEnd - 7 * kDayMs, kEnd);
    a.observations = {{"supply_temp.points", 168},
                      {"supply_temp.mean", 6.9},
                      {"supply_temp.max", 7.7},
                      {"supply_temp.max_at", "2024-03-25 09:00"},
                      {"supply_temp.latest", 6.6}};
    a.reused_from = {"d/art-001"};
    Json series = Json::array();
    for (int h = 0; h < 168; ++h) series.push_back({kEnd - 7 * kDayMs + h * kHourMs, 6.9});
    a.slices.push_back(EvidenceSlice{a.asset_id, EvidenceKind::sensor_history, a.time_range,
                                     {{"channel", "supply_temp"}}, Json{{"series", series}}});
    return a;
}

} // namespace

TEST(Intent, FaultQuestionWithDefaultWeek) {
    const auto i = fault_intent();
    EXPECT_EQ(i.category, Category::fault_diagnosis);
    EXPECT_EQ(i.asset_ids, std::vector<std::string>{"CH-01"});
    ASSERT_TRUE(i.time_range);
    EXPECT_EQ(*i.time_range, TimeRange(kEnd - 7 * kDayMs, kEnd));
    EXPECT_FALSE(i.needs_clarification);
}

TEST(Intent, SameChillerLastMonthResolvesAndShifts) {
    const auto first = fault_intent();
    const auto second = intent_of("What about the same chiller last month?", {first});
    EXPECT_EQ(second.asset_ids, std::vector<std::string>{"CH-01"});
    ASSERT_TRUE(second.time_range);
    EXPECT_NE(*second.time_range, *first.time_range);
    EXPECT_GT(second.time_range->length(), first.time_range->length());
    EXPECT_EQ(second.referents.count("the same chiller"), 1u);
}

TEST(Intent, GreetingNeedsClarification) {
    const auto i = intent_of("hello");
    EXPECT_TRUE(i.needs_clarification);
    EXPECT_FALSE(i.clarification.empty());
    EXPECT_TRUE(plan_template(i, kEnd).nodes.empty());
}

TEST(Intent, FollowUpKeepsCategoryAndChannels) {
    const auto first = intent_of("Monitor the power draw of CH-02 over the last 3 days.");
    const auto next = intent_of("And how is it today?", {first});
    EXPECT_EQ(next.asset_ids, std::vector<std::string>{"CH-02"});
    EXPECT_EQ(next.channels, first.channels);
}

TEST(Intent, BothResolvesTwoMostRecentAssets) {
    const auto a = intent_of("Is CH-01 overheating this week?");
    const auto b = intent_of("Is CH-03 overheating this week?", {a});
    const auto c = intent_of("Compare both chillers over the last 10 days.", {a, b});
    EXPECT_EQ(c.category, Category::comparative_analysis);
    EXPECT_EQ(c.asset_ids.size(), 2u);
    EXPECT_EQ(*c.time_range, TimeRange(kEnd - 10 * kDayMs, kEnd));
}

TEST(Intent, JsonRoundTrip) {
    const auto i = intent_of("Forecast the power of CH-04 over the next 48 hours.");
    EXPECT_EQ(i.horizon, 48);
    EXPECT_EQ(Intent::from_json(i.to_json()).to_json(), i.to_json());
}

TEST(Plan, FaultDiagnosisIsThreeNodeChain) {
    const auto s = plan_turn(fault_intent(), ArtifactStore("d"), kEnd);
    ASSERT_EQ(s.nodes.size(), 3u);
    EXPECT_EQ(s.nodes[0].subtask.specialist, Specialist::data_collection);
    EXPECT_EQ(s.nodes[1].subtask.specialist, Specialist::time_series);
    EXPECT_EQ(s.nodes[2].subtask.specialist, Specialist::failure_reasoning);
    EXPECT_TRUE(s.nodes[0].deps.empty());
    EXPECT_EQ(s.nodes[1].deps, std::vector<std::string>{s.nodes[0].subtask.subtask_id});
    for (const auto& n : s.nodes) EXPECT_FALSE(n.coverable);
}

TEST(Plan, KnowledgeDiscoveryIsSingleMetadataNode) {
    const auto s = plan_template(intent_of("Tell me about CH-05."), kEnd);
    ASSERT_EQ(s.nodes.size(), 1u);
    EXPECT_EQ(s.nodes[0].subtask.specialist, Specialist::data_collection);
    ASSERT_EQ(s.nodes[0].subtask.requests.size(), 1u);
    EXPECT_EQ(s.nodes[0].subtask.requests[0].kind, EvidenceKind::site_metadata);
}

TEST(Plan, RepeatedIntentMarksDataNodesCoverable) {
    World world{WorldConfig{}};
    auto agent = world.new_agent(Architecture::supervisor, "D", Category::fault_diagnosis);
    agent->run_turn("Is chiller CH-01 overheating this week?");
    const auto s = plan_turn(agent->intents().back(), agent->store(), kEnd);
    ASSERT_EQ(s.nodes.size(), 3u);
    EXPECT_TRUE(s.nodes[0].coverable);
    EXPECT_TRUE(s.nodes[1].coverable);
    EXPECT_FALSE(s.nodes[2].coverable);
}

TEST(Plan, EveryCategoryTemplateValidates) {
    for (Category c : kAllCategories) {
        Intent i = fault_intent();
        i.category = c;
        i.channels = default_channels(c);
        const auto s = plan_template(i, kEnd);
        EXPECT_FALSE(s.nodes.empty()) << to_string(c);
        EXPECT_NO_THROW(s.validate());
    }
}

TEST(Route, FollowsDependencies) {
    auto s = plan_turn(fault_intent(), ArtifactStore("d"), kEnd);
    EXPECT_EQ(route_next(s), 0u);
    replan(s, 0, ok_result("a1"), sim::kFleetStart);
    EXPECT_EQ(s.completed_count(), 1u);
    EXPECT_EQ(route_next(s), 1u);
    replan(s, 1, ok_result("a2"), sim::kFleetStart);
    EXPECT_EQ(dependency_artifacts(s, s.nodes[2]), (std::vector<std::string>{"a1", "a2"}));
    replan(s, 2, ok_result("a3"), sim::kFleetStart);
    EXPECT_FALSE(route_next(s));
    EXPECT_TRUE(s.succeeded());
}

TEST(Route, NeverDispatchesUnsatisfiedNode) {
    auto s = plan_turn(fault_intent(), ArtifactStore("d"), kEnd);
    SpecialistResult fail;
    fail.failure = SubtaskFailure::tool_failure;
    replan(s, 0, fail, sim::kFleetStart);
    EXPECT_FALSE(route_next(s));
    EXPECT_FALSE(s.succeeded());
}

TEST(Replan, InsufficientEvidenceInsertsRemedialAlerts) {
    auto s = plan_turn(fault_intent(), ArtifactStore("d"), kEnd);
    replan(s, 0, ok_result("a1"), sim::kFleetStart);
    replan(s, 1, ok_result("a2"), sim::kFleetStart);
    EXPECT_TRUE(replan(s, 2, insufficient(), sim::kFleetStart));
    EXPECT_EQ(s.revision, 1);
    ASSERT_EQ(s.nodes.size(), 4u);
    const PlanNode& rem = s.nodes[2];
    EXPECT_TRUE(rem.subtask.remedial);
    ASSERT_EQ(rem.subtask.requests.size(), 1u);
    EXPECT_EQ(rem.subtask.requests[0].kind, EvidenceKind::alerts);
    EXPECT_EQ(*rem.subtask.requests[0].time_range, TimeRange(kEnd - 14 * kDayMs, kEnd));
    EXPECT_EQ(s.nodes[3].deps.back(), rem.subtask.subtask_id);
    EXPECT_EQ(route_next(s), 2u);
}

TEST(Replan, AbortsPastRevisionBound) {
    auto s = plan_turn(fault_intent(), ArtifactStore("d"), kEnd);
    replan(s, 0, ok_result("a1"), sim::kFleetStart);
    replan(s, 1, ok_result("a2"), sim::kFleetStart);
    int failures = 0;
    while (!s.aborted) {
        const auto fr = s.nodes.size() - 1;
        replan(s, fr, insufficient(), sim::kFleetStart);
        ++failures;
        ASSERT_LE(s.revision, kMaxPlanRevisions);
        if (!s.aborted) replan(s, *route_next(s), ok_result("rem" + std::to_string(failures)), sim::kFleetStart);
    }
    EXPECT_EQ(failures, kMaxPlanRevisions + 1);
    EXPECT_EQ(s.nodes.back().status, NodeStatus::failed);
    EXPECT_FALSE(s.succeeded());
    EXPECT_FALSE(route_next(s));
}

TEST(Replan, WidenedWindowClampsToFleetStart) {
    Intent i = intent_of("Why is CH-01 deviating over the whole window?");
    auto s = plan_turn(i, ArtifactStore("d"), kEnd);
    replan(s, 0, ok_result("a1"), sim::kFleetStart);
    replan(s, 1, ok_result("a2"), sim::kFleetStart);
    replan(s, 2, insufficient(), sim::kFleetStart);
    EXPECT_GE(s.nodes[2].subtask.requests[0].time_range->start(), sim::kFleetStart);
}

TEST(Synthesis, NoArtifactsAsksForClarification) {
    const auto text = synthesize(fault_intent(), {}, nullptr);
    EXPECT_NE(text.find("?"), std::string::npos);
}

TEST(Synthesis, DiagnosisNamesTopCode) {
    const Artifact a = diagnosis("d/art-001", "C12");
    const auto text = synthesize(fault_intent(), {&a}, nullptr);
    EXPECT_NE(text.find("C12"), std::string::npos);
    EXPECT_FALSE(findings_of(a).empty());
}

TEST(Synthesis, BoundedAnswerStaysUnderLimit) {
    std::vector<Artifact> store;
    for (int i = 0; i < 10; ++i) store.push_back(history_artifact(i));
    for (int i = 0; i < 60; ++i) store.push_back(history_artifact(i));
    std::vector<const Artifact*> ptrs;
    for (const auto& a : store) ptrs.push_back(&a);
    const auto bounded = synthesize(fault_intent(), ptrs, nullptr);
    EXPECT_LE(bounded.size(), kMaxAnswerChars);
    const auto ten = synthesize(fault_intent(), {ptrs.begin(), ptrs.begin() + 10}, nullptr);
    EXPECT_LE(ten.size(), kMaxAnswerChars);
    const auto unbounded = synthesize(fault_intent(), ptrs, nullptr, SynthesisOptions{false, kMaxAnswerChars});
    EXPECT_GT(unbounded.size(), bounded.size());
}

TEST(Repair, NearestToolNameOnSameServer) {
    World world{WorldConfig{}};
    ToolCall c;
    c.call_id = "c";
    c.server = "fmsr";
    c.tool = "map_failure_codes_v2";
    c.args = {{"codes", "C12"}};
    const auto& catalog = world.registry().catalog();
    ASSERT_FALSE(catalog.validate_name(c));
    const auto fixed = scripted_repair(catalog, c, {});
    ASSERT_TRUE(fixed);
    EXPECT_EQ(fixed->qualified_name(), "fmsr.map_failure_codes");
    EXPECT_TRUE(catalog.validate_schema(*fixed).empty());
}

TEST(Repair, NumericStringAndRenamedParam) {
    World world{WorldConfig{}};
    const auto& catalog = world.registry().catalog();
    ToolCall c;
    c.call_id = "c";
    c.server = "iot";
    c.tool = "get_sensor_history";
    c.args = {{"asset", "CH-01"}, {"channel", "power_kw"}, {"start", std::to_string(kEnd - kDayMs)}, {"end", kEnd}};
    const auto violations = catalog.validate_schema(c);
    ASSERT_FALSE(violations.empty());
    auto fixed = scripted_repair(catalog, c, violations);
    for (int round = 0; fixed && round < 3 && !catalog.validate_schema(*fixed).empty(); ++round)
        fixed = scripted_repair(catalog, *fixed, catalog.validate_schema(*fixed));
    ASSERT_TRUE(fixed);
    EXPECT_TRUE(catalog.validate_schema(*fixed).empty());
    EXPECT_EQ(fixed->args["asset_id"], "CH-01");
    EXPECT_EQ(fixed->args["start"], kEnd - kDayMs);
}

TEST(Repair, NothingToFixReturnsNullopt) {
    World world{WorldConfig{}};
    ToolCall c;
    c.server = "utilities";
    c.tool = "site_metadata";
    c.args = {{"asset_id", "CH-01"}};
    EXPECT_FALSE(scripted_repair(world.registry().catalog(), c, {}));
    EXPECT_EQ(levenshtein("kitten", "sitting"), 3u);
}
