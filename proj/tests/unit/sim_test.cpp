#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "assetops/sim/fleet.hpp"
#include "assetops/sim/latency.hpp"
#include "assetops/sim/servers.hpp"

using namespace assetops;
using namespace assetops::sim;

namespace {

std::shared_ptr<const SyntheticFleet> shared_fleet() {
    static auto f = std::make_shared<const SyntheticFleet>(generate_fleet(7, 4));
    return f;
}

struct SimRig {
    ToolRegistry registry;
    Clock clock{ClockMode::virtual_time, 0};
    BufferSink sink;
    explicit SimRig(LatencyConfig cfg = LatencyConfig::fast()) {
        register_simulated_servers(registry, shared_fleet(), cfg, 7);
    }
    ToolResult run(ToolCall& c) { return registry.invoke(c, {&clock, &sink}); }
};

ToolCall call(std::string server, std::string tool, Json args) {
    ToolCall c;
    c.call_id = "c";
    c.dialog_id = "d";
    c.turn_index = 1;
    c.server = std::move(server);
    c.tool = std::move(tool);
    c.args = std::move(args);
    return c;
}

} // namespace

TEST(Fleet, DeterministicSerialization) {
    EXPECT_EQ(generate_fleet(11, 3).to_json().dump(), generate_fleet(11, 3).to_json().dump());
    EXPECT_NE(generate_fleet(11, 3).to_json().dump(), generate_fleet(12, 3).to_json().dump());
}

TEST(Fleet, JsonRoundTrip) {
    const auto f = generate_fleet(5, 2);
    EXPECT_EQ(SyntheticFleet::from_json(f.to_json()).to_json().dump(), f.to_json().dump());
}

TEST(Fleet, DistinctAssetsAndEnoughChannels) {
    const auto f = generate_fleet(7, 4);
    std::set<std::string> ids;
    for (const auto& a : f.assets) {
        ids.insert(a.asset_id);
        EXPECT_GE(a.channels.size(), 2u);
    }
    EXPECT_EQ(ids.size(), 4u);
    EXPECT_EQ(f.sample_count(), 90u * 24u);
    EXPECT_THROW(generate_fleet(7, 0), ValidationError);
}

TEST(Fleet, AnomalyShiftAtLeastThreeSigma) {
    const auto f = generate_fleet(7, 4);
    for (const auto& w : f.anomalies) {
        const auto& values = *f.channel_series(w.asset_id, w.channel);
        double in_sum = 0, out_sum = 0, out_sq = 0;
        int in_n = 0, out_n = 0;
        for (std::size_t i = 0; i < values.size(); ++i) {
            bool in = false;
            for (const auto& o : f.anomalies)
                if (o.asset_id == w.asset_id && o.channel == w.channel && o.range.contains(f.sample_time(i))) in = true;
            if (w.range.contains(f.sample_time(i))) {
                in_sum += values[i];
                ++in_n;
            } else if (!in) {
                out_sum += values[i];
                out_sq += values[i] * values[i];
                ++out_n;
            }
        }
        const double out_mean = out_sum / out_n;
        const double out_std = std::sqrt(out_sq / out_n - out_mean * out_mean);
        EXPECT_GE(std::abs(in_sum / in_n - out_mean), 3.0 * out_std) << w.asset_id << "/" << w.channel;
    }
}

TEST(Fleet, EveryWindowHasAlertAndCatalogCode) {
    const auto f = generate_fleet(7, 6);
    for (const auto& w : f.anomalies) {
        EXPECT_TRUE(f.failure_codes.count(w.failure_code));
        int correlated = 0;
        for (const auto& a : f.alerts)
            if (a.asset_id == w.asset_id && w.range.contains(a.timestamp) && a.failure_code == w.failure_code)
                ++correlated;
        EXPECT_GE(correlated, 1);
    }
}

TEST(Forecast, PersistencePlusTrend) {
    std::vector<double> flat{7.0, 7.0, 7.0, 7.0};
    EXPECT_EQ(forecast_persistence_trend(flat, 3), (std::vector<double>{7.0, 7.0, 7.0}));
    std::vector<double> steps{1, 2, 3};
    EXPECT_EQ(forecast_persistence_trend(steps, 2), (std::vector<double>{4, 5}));
    EXPECT_THROW(forecast_persistence_trend(steps, 0), std::invalid_argument);
    EXPECT_THROW(forecast_persistence_trend({}, 2), std::invalid_argument);
}

TEST(AnomalyScore, ZScoreOverSixClamped) {
    ChannelStats s{10.0, 2.0};
    EXPECT_DOUBLE_EQ(anomaly_score(10.0, s), 0.0);
    EXPECT_DOUBLE_EQ(anomaly_score(16.0, s), 0.5);
    EXPECT_DOUBLE_EQ(anomaly_score(-100.0, s), 1.0);
    for (double v = -50; v < 50; v += 0.7) {
        const double x = anomaly_score(v, s);
        EXPECT_GE(x, 0.0);
        EXPECT_LE(x, 1.0);
    }
}

TEST(IotServer, DayOfHourlySamples) {
    SimRig rig;
    const Timestamp t0 = kFleetStart + 10 * kDayMs;
    auto c = call("iot", "get_sensor_history",
                  {{"asset_id", "CH-01"}, {"channel", "supply_temp"}, {"start", t0}, {"end", t0 + kDayMs}});
    auto r = rig.run(c);
    ASSERT_EQ(c.status, ToolStatus::ok);
    const auto& series = r.payload["series"];
    ASSERT_EQ(series.size(), 24u);
    const auto& values = *shared_fleet()->channel_series("CH-01", "supply_temp");
    EXPECT_DOUBLE_EQ(series[0][1].get<double>(), values[10 * 24]);
    auto events = rig.sink.take();
    ASSERT_EQ(events.size(), 2u);
    EXPECT_EQ(std::get<DbEventInfo>(events[1].detail).documents, 24);
}

TEST(IotServer, EmptyIntersectionGivesZeroDocuments) {
    SimRig rig;
    const Timestamp after = kFleetStart + 100 * kDayMs;
    auto c = call("iot", "get_sensor_history",
                  {{"asset_id", "CH-01"}, {"channel", "power_kw"}, {"start", after}, {"end", after + kDayMs}});
    auto r = rig.run(c);
    EXPECT_EQ(c.status, ToolStatus::ok);
    EXPECT_TRUE(r.payload["series"].empty());
    auto events = rig.sink.take();
    ASSERT_EQ(events.size(), 2u);
    EXPECT_EQ(std::get<DbEventInfo>(events[1].detail).documents, 0);
}

TEST(IotServer, UnknownAssetFails) {
    SimRig rig;
    auto c = call("iot", "get_sensor_history",
                  {{"asset_id", "CH-999"}, {"channel", "supply_temp"}, {"start", 0}, {"end", 10}});
    rig.run(c);
    EXPECT_EQ(c.status, ToolStatus::execution_failure);
}

TEST(TsfmServer, AnomalyWindowScoresHigh) {
    SimRig rig;
    const auto& w = shared_fleet()->anomalies.front();
    auto c = call("tsfm", "anomaly_scores",
                  {{"asset_id", w.asset_id}, {"channel", w.channel}, {"start", w.range.start()}, {"end", w.range.end()}});
    auto r = rig.run(c);
    double best = 0;
    for (const auto& p : r.payload["series"]) best = std::max(best, p[1].get<double>());
    EXPECT_GE(best, 0.5);
    // TSFM does not query a database.
    EXPECT_EQ(rig.sink.take().size(), 1u);
}

TEST(TsfmServer, ForecastHasHorizonPointsAndSlowsWithHistory) {
    SimRig rig;
    const Timestamp end = kFleetStart + 90 * kDayMs;
    auto a = call("tsfm", "forecast",
                  {{"asset_id", "CH-02"}, {"channel", "power_kw"}, {"start", end - kDayMs}, {"end", end}, {"horizon", 12}});
    auto ra = rig.run(a);
    ASSERT_EQ(a.status, ToolStatus::ok);
    EXPECT_EQ(ra.payload["series"].size(), 12u);
    auto b = call("tsfm", "forecast",
                  {{"asset_id", "CH-02"}, {"channel", "power_kw"}, {"start", end - 30 * kDayMs}, {"end", end}, {"horizon", 12}});
    rig.run(b);
    EXPECT_GT(b.latency_ms, a.latency_ms);
}

TEST(WorkOrderServer, CountsMatchFleet) {
    SimRig rig;
    const auto& wo = shared_fleet()->work_orders.front();
    auto c = call("workorder", "query", {{"asset_id", wo.asset_id}, {"start", wo.timestamp}, {"end", wo.timestamp + 1}});
    auto r = rig.run(c);
    EXPECT_EQ(r.payload["items"].size(), 1u);
    auto d = call("workorder", "query", {{"asset_id", wo.asset_id}, {"start", 0}, {"end", 10}});
    EXPECT_TRUE(rig.run(d).payload["items"].empty());
}

TEST(FmsrServer, CatalogLookupAndUnknownFlag) {
    SimRig rig;
    const auto& w = shared_fleet()->anomalies.front();
    auto c = call("fmsr", "map_failure_codes", {{"codes", w.failure_code + ", C99"}});
    auto r = rig.run(c);
    ASSERT_EQ(c.status, ToolStatus::ok);
    ASSERT_EQ(r.payload["items"].size(), 2u);
    EXPECT_EQ(r.payload["items"][0]["description"], shared_fleet()->failure_codes.at(w.failure_code).description);
    EXPECT_FALSE(r.payload["items"][1]["known"].get<bool>());
}

TEST(UtilitiesServer, MetadataAndConversion) {
    SimRig rig;
    auto m = call("utilities", "site_metadata", {{"asset_id", "CH-01"}});
    EXPECT_EQ(rig.run(m).payload["site"], "Site-A");
    auto u = call("utilities", "convert_units", {{"value", 100.0}, {"from", "degC"}, {"to", "degF"}});
    EXPECT_DOUBLE_EQ(rig.run(u).payload["value"].get<double>(), 212.0);
}

TEST(Latency, DeterministicPerSequence) {
    LatencyModel m{100, 50, 0.5, 0.3};
    for (std::uint64_t s = 0; s < 100; ++s) {
        EXPECT_EQ(m.sample(7, "iot", s, 10), m.sample(7, "iot", s, 10));
        const auto v = m.sample(7, "iot", s, 10);
        EXPECT_GE(v, 105);
        EXPECT_LE(v, 155);
        EXPECT_EQ(m.fails(7, "iot", s), m.fails(7, "iot", s));
    }
}

TEST(Latency, ForcedFaultsAlwaysFail) {
    LatencyConfig cfg = LatencyConfig::fast();
    cfg.servers["iot"].fault_rate = 1.0;
    SimRig rig(cfg);
    auto c = call("iot", "list_channels", {{"asset_id", "CH-01"}});
    rig.run(c);
    EXPECT_EQ(c.status, ToolStatus::execution_failure);
}

TEST(Latency, ConfigValidation) {
    EXPECT_THROW(LatencyConfig::from_json(Json{{"servers", {{"iot", {{"base_ms", -1}}}}}}), ConfigError);
    EXPECT_THROW(LatencyConfig::from_json(Json{{"bogus", 1}}), ConfigError);
    EXPECT_THROW(LatencyConfig::from_json(Json{{"servers", {{"iot", {{"fault_rate", 1.5}}}}}}), ConfigError);
    EXPECT_THROW(LatencyConfig::load("/nonexistent/config.json"), ConfigError);
    const auto p = LatencyConfig::paper_shape();
    EXPECT_EQ(LatencyConfig::from_json(p.to_json()).to_json(), p.to_json());
}

TEST(Latency, PaperShapeOrdering) {
    const auto p = LatencyConfig::paper_shape();
    const auto base = [&](const char* s) { return p.server(s).base_ms; };
    EXPECT_GT(base("tsfm"), base("iot"));
    EXPECT_GT(base("iot"), base("workorder"));
    for (const char* s : {"workorder", "events", "fmsr", "utilities"}) EXPECT_LT(base(s), base("iot"));
}
