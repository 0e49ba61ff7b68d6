#pragma once

#include <deque>
#include <mutex>

#include "assetops/tools/registry.hpp"

namespace fakes {

using namespace assetops;

/// Server with fixed per-tool latencies and an optional scripted
/// success/failure pattern consumed call by call.
class ScriptedServer final : public ToolServer {
public:
    ScriptedServer(std::string name, std::vector<ToolSchema> schemas, DurationMs latency = 100)
        : name_(std::move(name)), schemas_(std::move(schemas)), default_latency_(latency) {}

    std::string name() const override { return name_; }
    std::vector<ToolSchema> schemas() const override { return schemas_; }

    void set_latency(const std::string& tool, DurationMs ms) { latency_[tool] = ms; }
    void push_outcomes(std::initializer_list<bool> oks) {
        std::lock_guard lock(mu_);
        for (bool b : oks) pattern_.push_back(b);
    }
    int calls() const {
        std::lock_guard lock(mu_);
        return calls_;
    }

    ServerReply handle(const ServerRequest& req) override {
        ServerReply r;
        bool ok = true;
        {
            std::lock_guard lock(mu_);
            ++calls_;
            if (!pattern_.empty()) {
                ok = pattern_.front();
                pattern_.pop_front();
            }
        }
        auto it = latency_.find(req.tool);
        r.latency_ms = it == latency_.end() ? default_latency_ : it->second;
        if (req.args.contains("latency_ms")) r.latency_ms = req.args["latency_ms"].get<DurationMs>();
        r.ok = ok;
        if (ok) r.payload = Json{{"echo", req.args}};
        else r.error = "scripted failure";
        if (name_ == "db") r.db_queries.push_back({"find", r.latency_ms / 2, 3, ""});
        return r;
    }

private:
    std::string name_;
    std::vector<ToolSchema> schemas_;
    DurationMs default_latency_;
    std::map<std::string, DurationMs> latency_;
    mutable std::mutex mu_;
    std::deque<bool> pattern_;
    int calls_ = 0;
};

inline ToolSchema echo_schema(const std::string& server, const std::string& tool) {
    return ToolSchema{server,
                      tool,
                      "test tool",
                      {ParamSpec{"asset_id", ParamType::string, true, {}, {}, {}},
                       ParamSpec{"latency_ms", ParamType::integer, false, {}, 0, {}}}};
}

inline ToolCall make_call(const std::string& id, const std::string& server, const std::string& tool, Json args) {
    ToolCall c;
    c.call_id = id;
    c.dialog_id = "d";
    c.turn_index = 1;
    c.server = server;
    c.tool = tool;
    c.args = std::move(args);
    return c;
}

} // namespace fakes
