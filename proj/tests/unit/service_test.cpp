#include <gtest/gtest.h>

#include <httplib.h>

#include <thread>

#include "assetops/app/service.hpp"

using namespace assetops;

namespace {

struct Live {
    Service service{WorldConfig{}};
    int port = service.start("127.0.0.1", 0);
    httplib::Client client{"127.0.0.1", port};

    std::string create(const Json& body = Json::object()) {
        auto r = client.Post("/sessions", body.dump(), "application/json");
        if (!r || r->status != 201) return "";
        return Json::parse(r->body).at("session_id").get<std::string>();
    }

    std::vector<Json> turn(const std::string& id, const std::string& text) {
        auto r = client.Post("/sessions/" + id + "/turns", Json{{"text", text}}.dump(), "application/json");
        std::vector<Json> events;
        if (!r) return events;
        std::istringstream in(r->body);
        for (std::string line; std::getline(in, line);)
            if (!line.empty()) events.push_back(Json::parse(line));
        return events;
    }

    Json get(const std::string& path, int* status = nullptr) {
        auto r = client.Get(path);
        if (status) *status = r ? r->status : 0;
        return r ? Json::parse(r->body) : Json();
    }
};

} // namespace

TEST(Service, TurnStreamEndsWithFinalText) {
    Live live;
    const auto id = live.create();
    ASSERT_FALSE(id.empty());
    const auto events = live.turn(id, "Is chiller CH-01 overheating this week?");
    ASSERT_FALSE(events.empty());
    EXPECT_EQ(events.front().at("type"), "intent");
    EXPECT_EQ(events.back().at("type"), "final_text");
    bool routing = false, tool_call = false;
    for (const auto& e : events) {
        routing |= e.at("type") == "routing";
        tool_call |= e.at("type") == "tool_call";
    }
    EXPECT_TRUE(routing);
    EXPECT_TRUE(tool_call);
}

TEST(Service, FollowUpShowsReusedArtifactsAndProfileIdentity) {
    Live live;
    const auto id = live.create(Json{{"architecture", "supervisor"}, {"category", "fault-diagnosis"}});
    live.turn(id, "Is chiller CH-01 overheating this week?");
    live.turn(id, "What failure mode explains the deviation on the same chiller?");

    const Json arts = live.get("/sessions/" + id + "/artifacts");
    int reused = 0;
    for (const auto& a : arts.at("artifacts")) reused += a.at("reused").get<bool>();
    EXPECT_GE(reused, 1);

    const Json prof = live.get("/sessions/" + id + "/profile");
    ASSERT_EQ(prof.at("per_turn").size(), 2u);
    EXPECT_EQ(prof.at("llm_ms").get<DurationMs>() + prof.at("tool_ms").get<DurationMs>() +
                  prof.at("routing_ms").get<DurationMs>(),
              prof.at("wall_ms").get<DurationMs>());
    for (const auto& t : prof.at("per_turn"))
        EXPECT_EQ(t.at("llm_ms").get<DurationMs>() + t.at("tool_ms").get<DurationMs>() +
                      t.at("routing_ms").get<DurationMs>(),
                  t.at("duration_ms").get<DurationMs>());
}

TEST(Service, StructuredClientErrors) {
    Live live;
    int status = 0;
    const Json missing = live.get("/sessions/S9999/artifacts", &status);
    EXPECT_EQ(status, 404);
    EXPECT_EQ(missing.at("error").at("code"), "not_found");

    auto bad_arch = live.client.Post("/sessions", R"({"architecture": "swarm"})", "application/json");
    ASSERT_TRUE(bad_arch);
    EXPECT_EQ(bad_arch->status, 400);
    EXPECT_TRUE(Json::parse(bad_arch->body).at("error").contains("message"));

    const auto id = live.create();
    for (const char* body : {"not json", "{}", R"({"text": ""})", R"({"text": 3})"}) {
        auto r = live.client.Post("/sessions/" + id + "/turns", body, "application/json");
        ASSERT_TRUE(r);
        EXPECT_EQ(r->status, 400) << body;
        EXPECT_EQ(Json::parse(r->body).at("error").at("code"), "bad_request");
    }
    auto unknown_turn = live.client.Post("/sessions/S9999/turns", R"({"text": "hi"})", "application/json");
    ASSERT_TRUE(unknown_turn);
    EXPECT_EQ(unknown_turn->status, 404);
}

TEST(Service, BusyPortFailsToStart) {
    Live live;
    Service second{WorldConfig{}};
    try {
        second.start("127.0.0.1", live.port);
        FAIL() << "expected the bind to fail";
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("port busy"), std::string::npos);
    }
}

TEST(Service, ConcurrentSessionsStayIndependent) {
    Live live;
    const auto a = live.create();
    const auto b = live.create(Json{{"architecture", "plan-execute"}});
    std::vector<Json> ea, eb;
    std::thread ta([&] {
        httplib::Client c("127.0.0.1", live.port);
        auto r = c.Post("/sessions/" + a + "/turns", R"({"text": "Is chiller CH-02 overheating this week?"})",
                        "application/json");
        if (r) ea.push_back(Json::parse(r->body.substr(r->body.rfind('\n', r->body.size() - 2) + 1)));
    });
    std::thread tb([&] {
        httplib::Client c("127.0.0.1", live.port);
        auto r = c.Post("/sessions/" + b + "/turns", R"({"text": "Is chiller CH-03 overheating this week?"})",
                        "application/json");
        if (r) eb.push_back(Json::parse(r->body.substr(r->body.rfind('\n', r->body.size() - 2) + 1)));
    });
    ta.join();
    tb.join();
    ASSERT_EQ(ea.size(), 1u);
    ASSERT_EQ(eb.size(), 1u);
    EXPECT_EQ(ea[0].at("type"), "final_text");
    EXPECT_EQ(eb[0].at("type"), "final_text");
    EXPECT_EQ(live.get("/health").at("sessions"), 2);
    EXPECT_EQ(live.get("/sessions/" + a + "/profile").at("per_turn").size(), 1u);
    EXPECT_EQ(live.get("/sessions/" + b + "/profile").at("architecture"), "plan-execute");
}
