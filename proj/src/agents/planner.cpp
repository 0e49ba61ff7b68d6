#include "assetops/agents/planner.hpp"

#include <httplib.h>

#include <chrono>
#include <cstdlib>
#include <regex>

#include "assetops/core/tokens.hpp"

namespace assetops {

PlannerReply ScriptedPlanner::complete(const PlannerRequest& request) {
    const std::string prompt = request.context.dump();
    const std::string answer = request.proposal.dump();
    PlannerReply r;
    r.decision = request.proposal;
    r.record.model = model();
    r.record.purpose = request.purpose;
    r.record.prompt_tokens = estimate_tokens(prompt);
    r.record.completion_tokens = estimate_tokens(answer);
    r.record.latency_ms = latency_.sample(static_cast<std::int64_t>(prompt.size()), r.record.completion_tokens);
    return r;
}

RemoteModelConfig RemoteModelConfig::from_env(const std::string& prefix) {
    auto get = [&](const char* k) {
        const char* v = std::getenv((prefix + k).c_str());
        return v ? std::string(v) : std::string();
    };
    RemoteModelConfig c;
    c.base_url = get("_BASE_URL");
    c.model = get("_MODEL");
    c.api_key = get("_API_KEY");
    if (c.base_url.empty() || c.model.empty())
        throw ConfigError("remote model needs " + prefix + "_BASE_URL and " + prefix + "_MODEL");
    return c;
}

ChatCompletion chat_complete(const RemoteModelConfig& cfg, const std::string& system, const std::string& user) {
    static const std::regex url_re(R"((https?)://([^/:]+)(:(\d+))?(/.*)?)");
    std::smatch m;
    if (!std::regex_match(cfg.base_url, m, url_re)) throw ConfigError("malformed base URL " + cfg.base_url);
    if (m[1] == "https") throw ConfigError("only http:// endpoints are supported");
    const int port = m[4].matched ? std::stoi(m[4].str()) : 80;
    std::string prefix = m[5].matched ? m[5].str() : "";
    while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();

    httplib::Client cli(m[2].str(), port);
    cli.set_connection_timeout(std::chrono::milliseconds(cfg.timeout_ms));
    cli.set_read_timeout(std::chrono::milliseconds(cfg.timeout_ms));
    httplib::Headers headers;
    if (!cfg.api_key.empty()) headers.emplace("Authorization", "Bearer " + cfg.api_key);
    Json body{{"model", cfg.model},
              {"temperature", 0},
              {"messages", Json::array({Json{{"role", "system"}, {"content", system}},
                                        Json{{"role", "user"}, {"content", user}}})}};
    auto res = cli.Post(prefix + "/chat/completions", headers, body.dump(), "application/json");
    if (!res) throw Error("chat completion transport error: " + httplib::to_string(res.error()));
    if (res->status != 200) throw Error("chat completion returned HTTP " + std::to_string(res->status));
    const Json j = Json::parse(res->body);
    ChatCompletion out;
    out.content = j.at("choices").at(0).at("message").at("content").get<std::string>();
    if (j.contains("usage")) {
        out.prompt_tokens = j["usage"].value("prompt_tokens", std::int64_t{0});
        out.completion_tokens = j["usage"].value("completion_tokens", std::int64_t{0});
    }
    return out;
}

PlannerReply RemotePlanner::complete(const PlannerRequest& request) {
    const std::string system =
        "You are the supervisor of an industrial operations and maintenance assistant. Reply with a single JSON "
        "value of the same shape as the proposal. Return the proposal unchanged if it is correct.";
    const std::string user = Json{{"purpose", to_string(request.purpose)},
                                  {"context", request.context},
                                  {"proposal", request.proposal}}
                                 .dump();
    const auto t0 = std::chrono::steady_clock::now();
    PlannerReply r;
    r.measured = true;
    r.decision = request.proposal;
    r.record.model = cfg_.model;
    r.record.purpose = request.purpose;
    try {
        const ChatCompletion c = chat_complete(cfg_, system, user);
        r.record.prompt_tokens = c.prompt_tokens ? c.prompt_tokens : estimate_tokens(system + user);
        r.record.completion_tokens = c.completion_tokens ? c.completion_tokens : estimate_tokens(c.content);
        std::string text = c.content;
        // Tolerate fenced replies.
        if (auto a = text.find('{'), b = text.rfind('}'); a != std::string::npos && b != std::string::npos && b > a &&
                                                           request.proposal.is_object())
            text = text.substr(a, b - a + 1);
        Json parsed = Json::parse(text, nullptr, false);
        if (!parsed.is_discarded() && (!request.accept || request.accept(parsed))) {
            r.decision = std::move(parsed);
            r.from_model = true;
        }
    } catch (const std::exception&) {
        r.record.prompt_tokens = estimate_tokens(system + user);
    }
    r.record.latency_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

} // namespace assetops
