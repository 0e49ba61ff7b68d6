#pragma once

#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "assetops/tools/registry.hpp"

namespace httplib {
class Server;
}

namespace assetops::wire {

// Request:  {"call_id", "tool", "args"}
// Response: {"call_id", "status", "payload", "error_detail"}
// Responses may also carry "latency_ms" (simulated service time) and
// "db_queries" so tier-3 instrumentation survives the process boundary.

Json encode_request(const ServerRequest& request);
/// Throws ParseError when a required field is missing or mistyped.
ServerRequest decode_request(const Json& j);

Json encode_response(const std::string& call_id, const ServerReply& reply);
ServerReply decode_response(const Json& j, const std::string& expected_call_id);

/// Runs one request against `server` and returns the encoded response; server
/// exceptions become an execution-failure response.
Json serve_one(ToolServer& server, const Json& request);

/// Exposes one ToolServer over HTTP:
///   GET  /schemas -> list of ToolSchema
///   POST /call    -> wire response
/// The endpoint never sleeps; it reports the service time in "latency_ms".
class HttpToolEndpoint {
public:
    explicit HttpToolEndpoint(std::shared_ptr<ToolServer> server);
    ~HttpToolEndpoint();
    HttpToolEndpoint(const HttpToolEndpoint&) = delete;
    HttpToolEndpoint& operator=(const HttpToolEndpoint&) = delete;

    /// Binds to host:port (port 0 picks a free port) and serves on a
    /// background thread. Returns the bound port; throws Error on failure.
    int start(const std::string& host = "127.0.0.1", int port = 0);
    void stop();

private:
    std::shared_ptr<ToolServer> server_;
    std::unique_ptr<httplib::Server> http_;
    std::thread thread_;
};

/// Client side of HttpToolEndpoint. Schemas are fetched once at construction.
class RemoteToolServer final : public ToolServer {
public:
    RemoteToolServer(std::string name, std::string host, int port, int timeout_ms = 30'000);

    std::string name() const override { return name_; }
    std::vector<ToolSchema> schemas() const override { return schemas_; }
    ServerReply handle(const ServerRequest& request) override;

private:
    std::string name_;
    std::string host_;
    int port_;
    int timeout_ms_;
    std::vector<ToolSchema> schemas_;
};

} // namespace assetops::wire
