#include <gtest/gtest.h>

#include <random>

#include "assetops/artifacts/store.hpp"
#include "oracles.hpp"

using namespace assetops;

namespace {

Json series(Timestamp from, Timestamp to) {
    Json s = Json::array();
    for (Timestamp t = from; t < to; ++t) s.push_back(Json::array({t, static_cast<double>(t)}));
    return Json{{"series", s}};
}

Artifact sensor_artifact(ArtifactStore& store, std::string asset, Timestamp s, Timestamp e, int turn = 1,
                         std::string channel = "supply_temp") {
    Artifact a;
    a.artifact_id = store.next_id();
    a.dialog_id = store.dialog_id();
    a.turn_index = turn;
    a.asset_id = asset;
    a.time_range = TimeRange(s, e);
    a.evidence_kind = EvidenceKind::sensor_history;
    a.slices.push_back({asset, EvidenceKind::sensor_history, TimeRange(s, e), {{"channel", channel}}, series(s, e)});
    return a;
}

EvidenceRequest sensor_request(std::string asset, Timestamp s, Timestamp e, std::string channel = "supply_temp") {
    return EvidenceRequest{std::move(asset), EvidenceKind::sensor_history, TimeRange(s, e), {{"channel", channel}}};
}

} // namespace

TEST(ArtifactStore, PutGetRoundTripAndUniqueness) {
    ArtifactStore store("d1");
    auto a = sensor_artifact(store, "CH-01", 0, 100);
    const auto id = store.put(a);
    ASSERT_NE(store.get(id), nullptr);
    EXPECT_EQ(store.get(id)->to_json(true), a.to_json(true));
    EXPECT_THROW(store.put(a), ValidationError);
}

TEST(ArtifactStore, InsertionOrderOverFiftyPuts) {
    ArtifactStore store("d1");
    std::vector<std::string> ids;
    for (int i = 0; i < 50; ++i) ids.push_back(store.put(sensor_artifact(store, "CH-01", i, i + 1, 1 + i % 5)));
    auto all = store.list_all();
    ASSERT_EQ(all.size(), 50u);
    for (std::size_t i = 0; i < ids.size(); ++i) EXPECT_EQ(all[i]->artifact_id, ids[i]);
}

TEST(ArtifactStore, RejectsBrokenInvariants) {
    ArtifactStore store("d1");
    auto a = sensor_artifact(store, "CH-01", 0, 10);
    a.confidence = 1.5;
    EXPECT_THROW(store.put(a), ValidationError);
    a.confidence = 0.7;
    a.invoked_tools = {"never-recorded"};
    EXPECT_THROW(store.put(a), ValidationError);
    store.register_call("never-recorded");
    EXPECT_NO_THROW(store.put(a));
    auto b = sensor_artifact(store, "CH-01", 0, 10);
    b.dialog_id = "other";
    EXPECT_THROW(store.put(b), ValidationError);
}

TEST(FindCovering, EmptyStoreReturnsRequestAsGap) {
    ArtifactStore store("d1");
    auto req = sensor_request("CH-01", 0, 100);
    auto d = store.find_covering(req);
    EXPECT_TRUE(d.reused.empty());
    ASSERT_EQ(d.gaps.size(), 1u);
    EXPECT_EQ(d.gaps[0], req);
}

TEST(FindCovering, ContainedRequestIsFullyReused) {
    ArtifactStore store("d1");
    const auto id = store.put(sensor_artifact(store, "CH-01", 0, 100));
    auto d = store.find_covering(sensor_request("CH-01", 20, 50));
    ASSERT_EQ(d.reused.size(), 1u);
    EXPECT_EQ(d.reused[0]->artifact_id, id);
    EXPECT_TRUE(d.gaps.empty());
    ASSERT_EQ(d.covered.size(), 1u);
    EXPECT_EQ(d.covered[0].payload["series"].size(), 30u) << "covered evidence is clipped to the request";
}

TEST(FindCovering, AssetKindAndParamMismatchMiss) {
    ArtifactStore store("d1");
    store.put(sensor_artifact(store, "CH-01", 0, 100));
    EXPECT_EQ(store.find_covering(sensor_request("CH-02", 20, 50)).gaps.size(), 1u);
    EXPECT_EQ(store.find_covering(sensor_request("CH-01", 20, 50, "power_kw")).gaps.size(), 1u);
    auto alerts = sensor_request("CH-01", 20, 50);
    alerts.kind = EvidenceKind::alerts;
    alerts.params.clear();
    EXPECT_EQ(store.find_covering(alerts).gaps.size(), 1u);
}

TEST(FindCovering, PartialCoverageLeavesExactGap) {
    ArtifactStore store("d1");
    store.put(sensor_artifact(store, "CH-01", 0, 60));
    auto d = store.find_covering(sensor_request("CH-01", 0, 100));
    ASSERT_EQ(d.gaps.size(), 1u);
    EXPECT_EQ(*d.gaps[0].time_range, TimeRange(60, 100));
    EXPECT_EQ(d.gaps[0].params, (ParamMap{{"channel", "supply_temp"}}));
}

TEST(FindCovering, PrefersMostRecentTurn) {
    ArtifactStore store("d1");
    store.put(sensor_artifact(store, "CH-01", 0, 100, 1));
    const auto newer = store.put(sensor_artifact(store, "CH-01", 0, 100, 3));
    auto d = store.find_covering(sensor_request("CH-01", 10, 20));
    ASSERT_EQ(d.reused.size(), 1u);
    EXPECT_EQ(d.reused[0]->artifact_id, newer);
}

TEST(FindCovering, RangelessRequestCoveredByAnyMatch) {
    ArtifactStore store("d1");
    Artifact a;
    a.artifact_id = store.next_id();
    a.dialog_id = "d1";
    a.asset_id = "CH-01";
    a.evidence_kind = EvidenceKind::site_metadata;
    a.slices.push_back({"CH-01", EvidenceKind::site_metadata, std::nullopt, {}, Json{{"site", "Site-A"}}});
    store.put(a);
    EvidenceRequest r{"CH-01", EvidenceKind::site_metadata, std::nullopt, {}};
    EXPECT_TRUE(store.find_covering(r).gaps.empty());
}

TEST(FindCovering, ForecastNeedsExactWindowAndHorizon) {
    ArtifactStore store("d1");
    Artifact a;
    a.artifact_id = store.next_id();
    a.dialog_id = "d1";
    a.asset_id = "CH-01";
    a.evidence_kind = EvidenceKind::forecast;
    a.slices.push_back({"CH-01", EvidenceKind::forecast, TimeRange(0, 100), {{"channel", "x"}, {"horizon", 24}}, Json::object()});
    store.put(a);
    EvidenceRequest same{"CH-01", EvidenceKind::forecast, TimeRange(0, 100), {{"channel", "x"}, {"horizon", 24}}};
    EXPECT_TRUE(store.find_covering(same).gaps.empty());
    auto other_h = same;
    other_h.params["horizon"] = 48;
    EXPECT_EQ(store.find_covering(other_h).gaps.size(), 1u);
    auto sub = same;
    sub.time_range = TimeRange(10, 100);
    auto d = store.find_covering(sub);
    ASSERT_EQ(d.gaps.size(), 1u);
    EXPECT_EQ(d.gaps[0], sub);
}

TEST(FindCovering, DisabledStoreNeverReuses) {
    ArtifactStore store("d1", false);
    store.put(sensor_artifact(store, "CH-01", 0, 100));
    auto req = sensor_request("CH-01", 10, 20);
    auto d = store.find_covering(req);
    EXPECT_TRUE(d.reused.empty());
    ASSERT_EQ(d.gaps.size(), 1u);
    EXPECT_EQ(d.gaps[0], req);
}

TEST(FindCovering, SoundnessAndCompletenessAgainstOracle) {
    std::mt19937_64 gen(99);
    std::uniform_int_distribution<int> coord(0, 1000), n(0, 5);
    for (int trial = 0; trial < 300; ++trial) {
        ArtifactStore store("d");
        std::vector<oracle::Span> stored;
        for (int k = n(gen); k > 0; --k) {
            int s = coord(gen), e = coord(gen);
            if (s == e) continue;
            if (s > e) std::swap(s, e);
            store.put(sensor_artifact(store, "CH-01", s, e, 1 + k));
            stored.emplace_back(s, e);
        }
        int s = coord(gen), e = coord(gen);
        if (s == e) continue;
        if (s > e) std::swap(s, e);
        auto d = store.find_covering(sensor_request("CH-01", s, e));
        std::vector<oracle::Span> gaps;
        for (const auto& g : d.gaps) {
            ASSERT_TRUE(TimeRange(s, e).contains(*g.time_range));
            gaps.emplace_back(g.time_range->start(), g.time_range->end());
        }
        ASSERT_EQ(gaps, oracle::subtract({s, e}, stored));
        std::vector<oracle::Span> all = gaps;
        for (const auto& c : d.covered) all.emplace_back(c.range->start(), c.range->end());
        EXPECT_EQ(oracle::union_length(all), e - s);
        if (oracle::subtract({s, e}, stored).empty()) EXPECT_TRUE(d.fully_covered());
    }
}

TEST(MergeArtifacts, IdentityLikeMergeGetsFreshId) {
    ArtifactStore store("d1");
    auto a = sensor_artifact(store, "CH-01", 0, 50);
    a.observations["max"] = 3.0;
    auto m = merge_artifacts({a}, {}, "new-id");
    EXPECT_EQ(m.artifact_id, "new-id");
    EXPECT_EQ(m.observations, a.observations);
    EXPECT_EQ(m.time_range, a.time_range);
}

TEST(MergeArtifacts, HullMinConfidenceOverrideAndStitch) {
    ArtifactStore store("d1");
    auto a = sensor_artifact(store, "CH-01", 0, 50);
    auto b = sensor_artifact(store, "CH-01", 50, 100);
    a.confidence = 0.9;
    b.confidence = 0.6;
    a.observations = {{"k", 1}, {"only_a", true}};
    b.observations = {{"k", 2}};
    a.invoked_tools = {"c1"};
    b.invoked_tools = {"c2"};
    auto m = merge_artifacts({a}, {b}, "m");
    EXPECT_EQ(*m.time_range, TimeRange(0, 100));
    EXPECT_DOUBLE_EQ(m.confidence, 0.6);
    EXPECT_EQ(m.observations.at("k"), 2);
    EXPECT_EQ(m.observations.at("only_a"), true);
    EXPECT_EQ(m.invoked_tools, (std::vector<std::string>{"c1", "c2"}));
    ASSERT_EQ(m.slices.size(), 1u) << "adjacent slices coalesce";
    EXPECT_EQ(m.slices[0].payload["series"].size(), 100u);
}

TEST(MergeArtifacts, DisjointSlicesStaySeparate) {
    ArtifactStore store("d1");
    auto m = merge_artifacts({sensor_artifact(store, "CH-01", 0, 10)}, {sensor_artifact(store, "CH-01", 20, 30)}, "m");
    EXPECT_EQ(m.slices.size(), 2u);
}

TEST(MergeArtifacts, AssetMismatchThrows) {
    ArtifactStore store("d1");
    EXPECT_THROW(merge_artifacts({sensor_artifact(store, "CH-01", 0, 10)}, {sensor_artifact(store, "CH-02", 0, 10)}, "m"),
                 ValidationError);
}

TEST(MergePayloads, ItemsDedupById) {
    Json a{{"items", {{{"id", "AL-2"}, {"timestamp", 20}}, {{"id", "AL-1"}, {"timestamp", 10}}}}};
    Json b{{"items", {{{"id", "AL-2"}, {"timestamp", 20}}, {{"id", "AL-3"}, {"timestamp", 30}}}}};
    auto m = merge_payloads(a, b);
    ASSERT_EQ(m["items"].size(), 3u);
    EXPECT_EQ(m["items"][0]["id"], "AL-1");
    EXPECT_EQ(m["items"][2]["id"], "AL-3");
}

TEST(ArtifactJson, RoundTrip) {
    ArtifactStore store("d1");
    auto a = sensor_artifact(store, "CH-01", 0, 5);
    a.assumptions = {"hourly sampling"};
    a.observations["points"] = 5;
    EXPECT_EQ(Artifact::from_json(a.to_json(true)).to_json(true), a.to_json(true));
    EXPECT_FALSE(a.to_json().at("slices")[0].contains("payload"));
}
