#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include "assetops/app/runner.hpp"

namespace httplib {
class Server;
}

namespace assetops {

/// HTTP front end for live dialogs.
///
///   POST /sessions                   {"architecture"?, "category"?} -> 201 {"session_id", ...}
///   POST /sessions/{id}/turns        {"text"} -> NDJSON stream of intent, routing,
///                                    tool_call and final_text events
///   GET  /sessions/{id}/artifacts    stored artifacts with reused flags
///   GET  /sessions/{id}/profile      latency decomposition of the turns so far
///   GET  /health
///
/// Errors are {"error": {"code", "message"}} with status 400 or 404. Sessions
/// share one fleet, tool registry and profiler; each has its own clock and
/// serializes its own turns.
class Service {
public:
    explicit Service(WorldConfig world);
    ~Service();

    Service(const Service&) = delete;
    Service& operator=(const Service&) = delete;

    /// Binds (port 0 picks a free port) and serves on a background thread.
    /// Returns the bound port. Throws Error when the port is unavailable.
    int start(const std::string& host = "127.0.0.1", int port = 0);
    /// Binds, calls `on_ready` with the bound port, then serves on the
    /// calling thread until shutdown().
    void serve(const std::string& host, int port, const std::function<void(int)>& on_ready = {});
    /// Stops accepting requests without joining; safe from a signal handler.
    void shutdown();
    void stop();

    std::size_t session_count() const;

private:
    struct Session {
        std::string id;
        Architecture architecture = Architecture::supervisor;
        std::unique_ptr<Clock> clock;
        AgentEnv env;
        std::unique_ptr<DialogAgent> agent;
        std::mutex turn_mutex;
    };

    void install_routes();
    std::shared_ptr<Session> find(const std::string& id) const;
    int bind(const std::string& host, int port);

    World world_;
    std::unique_ptr<httplib::Server> http_;
    std::thread thread_;
    mutable std::mutex mutex_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    int next_id_ = 1;
};

} // namespace assetops
