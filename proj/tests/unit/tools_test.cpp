#include <gtest/gtest.h>

#include "assetops/sim/servers.hpp"
#include "assetops/tools/registry.hpp"
#include "assetops/tools/wire.hpp"
#include "fakes.hpp"

using namespace assetops;

namespace {

ToolCall call(std::string server, std::string tool, Json args) {
    return fakes::make_call("c1", std::move(server), std::move(tool), std::move(args));
}

ToolCatalog catalog() { return sim::simulated_tool_catalog(); }

} // namespace

TEST(Catalog, SixSimulatedServers) {
    auto c = catalog();
    EXPECT_EQ(c.servers().size(), 6u);
    EXPECT_NE(c.resolve("iot", "get_sensor_history"), nullptr);
    EXPECT_EQ(c.resolve("iot", "nope"), nullptr);
}

TEST(Catalog, DuplicatesRejected) {
    ToolCatalog c;
    c.add(fakes::echo_schema("a", "t"));
    EXPECT_THROW(c.add(fakes::echo_schema("a", "t")), ValidationError);
    ToolSchema dup{"a", "u", "", {ParamSpec{"x"}, ParamSpec{"x"}}};
    EXPECT_THROW(c.add(dup), ValidationError);
}

TEST(ValidateName, ResolvesByServerToolPair) {
    auto c = catalog();
    EXPECT_TRUE(c.validate_name(call("iot", "get_sensor_history", {})));
    EXPECT_FALSE(c.validate_name(call("iot", "get_sensor_data_v2", {})));
    // Right tool name on the wrong server: enumerate every pairing.
    for (const auto& server : c.servers())
        for (const auto& other : c.servers()) {
            if (server == other) continue;
            for (const auto* s : c.tools_of(server)) {
                const bool exists = c.resolve(other, s->tool) != nullptr;
                EXPECT_EQ(c.validate_name(call(other, s->tool, {})), exists);
            }
        }
}

TEST(ValidateSchema, ExamplesFromTheContract) {
    auto c = catalog();
    Json ok{{"asset_id", "CH-01"}, {"channel", "supply_temp"}, {"start", 0}, {"end", 10}, {"horizon", 24}};
    EXPECT_TRUE(c.validate_schema(call("tsfm", "forecast", ok)).empty());

    Json missing = ok;
    missing.erase("asset_id");
    auto v = c.validate_schema(call("tsfm", "forecast", missing));
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0].to_string(), "missing:asset_id");

    Json as_string = ok;
    as_string["horizon"] = "24";
    v = c.validate_schema(call("tsfm", "forecast", as_string));
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0].to_string(), "type:horizon");
}

TEST(ValidateSchema, StrictTypesRangesAndUnknowns) {
    auto c = catalog();
    Json base{{"asset_id", "CH-01"}, {"start", 0}, {"end", 10}};
    auto with = [&](const char* k, Json v) {
        Json j = base;
        j[k] = std::move(v);
        return c.validate_schema(call("events", "query_alerts", j));
    };
    EXPECT_TRUE(with("min_severity", "high").empty());
    EXPECT_EQ(with("min_severity", "urgent").at(0).to_string(), "type:min_severity");
    EXPECT_EQ(with("colour", "red").at(0).to_string(), "unknown:colour");
    EXPECT_EQ(with("start", -5).at(0).to_string(), "type:start");
    EXPECT_EQ(with("start", 1.5).at(0).to_string(), "type:start");
    EXPECT_EQ(with("end", 0).at(0).to_string(), "range:end");

    Json f{{"asset_id", "CH-01"}, {"channel", "x"}, {"start", 0}, {"end", 10}, {"horizon", 0}};
    EXPECT_EQ(c.validate_schema(call("tsfm", "forecast", f)).at(0).to_string(), "range:horizon");
    f["horizon"] = 169;
    EXPECT_EQ(c.validate_schema(call("tsfm", "forecast", f)).at(0).to_string(), "range:horizon");

    Json conv{{"value", 7}, {"from", "degC"}, {"to", "degF"}};
    EXPECT_TRUE(c.validate_schema(call("utilities", "convert_units", conv)).empty()) << "integers are reals";
}

class RegistryTest : public ::testing::Test {
protected:
    void SetUp() override {
        server = std::make_shared<fakes::ScriptedServer>(
            "db", std::vector<ToolSchema>{fakes::echo_schema("db", "get")}, 200);
        registry.register_server(server);
    }
    std::shared_ptr<fakes::ScriptedServer> server;
    ToolRegistry registry;
    Clock clock{ClockMode::virtual_time, 0};
    BufferSink sink;
};

TEST_F(RegistryTest, DuplicateServerRejected) {
    auto again = std::make_shared<fakes::ScriptedServer>("db", std::vector<ToolSchema>{});
    EXPECT_THROW(registry.register_server(again), ValidationError);
    EXPECT_EQ(registry.server_names().size(), 1u);
}

TEST_F(RegistryTest, InvokeRecordsOneToolEventPlusDbEvents) {
    auto c = fakes::make_call("x", "db", "get", {{"asset_id", "A"}});
    auto r = registry.invoke(c, {&clock, &sink});
    EXPECT_EQ(c.status, ToolStatus::ok);
    EXPECT_EQ(c.latency_ms, 200);
    EXPECT_FALSE(c.error_detail.has_value());
    EXPECT_EQ(r.payload_chars, static_cast<std::int64_t>(r.payload.dump().size()));
    auto ev = sink.take();
    ASSERT_EQ(ev.size(), 2u);
    EXPECT_EQ(ev[0].tier, Tier::tool);
    EXPECT_EQ(ev[1].tier, Tier::db);
    EXPECT_EQ(clock.now(), 0) << "invoke never advances the clock";
}

TEST_F(RegistryTest, TimeoutCapsLatencyAtBudget) {
    auto c = fakes::make_call("x", "db", "get", {{"asset_id", "A"}});
    InvokeOptions opt{&clock, &sink};
    opt.budget_ms = 50;
    registry.invoke(c, opt);
    EXPECT_EQ(c.status, ToolStatus::timeout);
    EXPECT_EQ(c.latency_ms, 50);
    ASSERT_TRUE(c.error_detail.has_value());
}

TEST_F(RegistryTest, InvalidCallsAreNeverDispatched) {
    auto bad_name = fakes::make_call("x", "db", "nope", {{"asset_id", "A"}});
    EXPECT_THROW(registry.invoke(bad_name, {&clock, &sink}), ValidationError);
    auto bad_schema = fakes::make_call("y", "db", "get", Json::object());
    EXPECT_THROW(registry.invoke(bad_schema, {&clock, &sink}), ValidationError);
    EXPECT_EQ(server->calls(), 0);
    EXPECT_TRUE(sink.take().empty());
}

TEST_F(RegistryTest, ServerFailureBecomesExecutionFailure) {
    server->push_outcomes({false});
    auto c = fakes::make_call("x", "db", "get", {{"asset_id", "A"}});
    registry.invoke(c, {&clock, &sink});
    EXPECT_EQ(c.status, ToolStatus::execution_failure);
    EXPECT_EQ(c.error_detail.value(), "scripted failure");
}

TEST(ToolCallJson, RoundTrip) {
    auto c = fakes::make_call("id-1", "iot", "get_sensor_history", {{"asset_id", "CH-01"}});
    c.status = ToolStatus::schema_violation;
    c.error_detail = "missing:channel";
    c.latency_ms = 12;
    c.started_at = 99;
    auto back = ToolCall::from_json(c.to_json());
    EXPECT_EQ(back.to_json(), c.to_json());
    for (auto s : {ToolStatus::ok, ToolStatus::invalid_name, ToolStatus::schema_violation,
                   ToolStatus::execution_failure, ToolStatus::timeout})
        EXPECT_EQ(tool_status_from_string(to_string(s)), s);
}

TEST(Wire, RequestAndResponseFieldNames) {
    ServerRequest req{"c9", "query", {{"asset_id", "CH-02"}}, 4};
    Json j = wire::encode_request(req);
    EXPECT_EQ(j.size(), 3u);
    EXPECT_TRUE(j.contains("call_id") && j.contains("tool") && j.contains("args"));
    EXPECT_EQ(wire::decode_request(j).args, req.args);
    EXPECT_THROW(wire::decode_request(Json{{"tool", "x"}}), ParseError);

    ServerReply fail;
    fail.ok = false;
    fail.error = "boom";
    Json r = wire::encode_response("c9", fail);
    for (const char* k : {"call_id", "status", "payload", "error_detail"}) EXPECT_TRUE(r.contains(k)) << k;
    auto back = wire::decode_response(r, "c9");
    EXPECT_FALSE(back.ok);
    EXPECT_EQ(back.error, "boom");
    EXPECT_THROW(wire::decode_response(r, "other"), ParseError);
}

TEST(Wire, HttpLoopbackPreservesPayloadAndTiers) {
    auto inner = std::make_shared<fakes::ScriptedServer>(
        "db", std::vector<ToolSchema>{fakes::echo_schema("db", "get")}, 70);
    wire::HttpToolEndpoint endpoint(inner);
    const int port = endpoint.start();
    ToolRegistry reg;
    reg.register_server(std::make_shared<wire::RemoteToolServer>("db", "127.0.0.1", port));
    ASSERT_NE(reg.catalog().resolve("db", "get"), nullptr);

    Clock clock(ClockMode::virtual_time, 0);
    BufferSink sink;
    auto c = fakes::make_call("w1", "db", "get", {{"asset_id", "CH-03"}});
    auto res = reg.invoke(c, {&clock, &sink});
    EXPECT_EQ(c.status, ToolStatus::ok);
    EXPECT_EQ(c.latency_ms, 70);
    EXPECT_EQ(res.payload["echo"]["asset_id"], "CH-03");
    EXPECT_EQ(sink.take().size(), 2u);
    endpoint.stop();
}
