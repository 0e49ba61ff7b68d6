#pragma once

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "assetops/core/clock.hpp"
#include "assetops/profiler/event.hpp"
#include "assetops/tools/tool_schema.hpp"

namespace assetops {

struct DbQueryRecord {
    std::string query_type;
    DurationMs latency_ms = 0;
    std::int64_t documents = 0;
    std::string error;
};

struct ServerRequest {
    std::string call_id;
    std::string tool;
    Json args;
    /// Per-server call sequence number; drives seeded jitter and faults.
    std::uint64_t sequence = 0;
};

struct ServerReply {
    bool ok = true;
    Json payload;
    std::string error;
    /// Simulated service time. When `measured` is set the time already passed
    /// in real time (out-of-process servers) and is reported as-is.
    DurationMs latency_ms = 0;
    bool measured = false;
    std::vector<DbQueryRecord> db_queries;
};

/// A named group of tools, in-process or behind the wire protocol.
class ToolServer {
public:
    virtual ~ToolServer() = default;
    virtual std::string name() const = 0;
    virtual std::vector<ToolSchema> schemas() const = 0;
    /// Throwing is equivalent to returning a failed reply.
    virtual ServerReply handle(const ServerRequest& request) = 0;
    /// When true the registry never lets two requests overlap on this server.
    virtual bool serializes_requests() const { return false; }
};

struct InvokeOptions {
    Clock* clock = nullptr;
    EventSink* sink = nullptr;
    /// Virtual-time start of this call; defaults to clock->now().
    std::optional<Timestamp> start_at;
    DurationMs budget_ms = 30'000;
    std::optional<std::uint64_t> sequence;
};

/// Server/tool registry. Populated at startup, then shared read-only; invoke()
/// is reentrant.
class ToolRegistry {
public:
    /// Throws ValidationError if a server with the same name exists.
    void register_server(std::shared_ptr<ToolServer> server);

    const ToolCatalog& catalog() const noexcept { return catalog_; }
    ToolServer* server(std::string_view name) const;
    std::vector<std::string> server_names() const;

    bool validate_name(const ToolCall& call) const { return catalog_.validate_name(call); }
    std::vector<Violation> validate_schema(const ToolCall& call) const {
        return catalog_.validate_schema(call);
    }

    /// Reserves `count` consecutive sequence numbers on `server`, returning the
    /// first.
    std::uint64_t reserve_sequence(std::string_view server, std::uint64_t count = 1);

    /// Dispatches a name- and schema-valid call. Fills status, latency_ms,
    /// started_at and error_detail on `call`, records exactly one tier-2 event
    /// plus any tier-3 events the server reports, and never advances the clock
    /// (the execution engine owns virtual-time arithmetic). In real mode the
    /// call blocks for the server's service time.
    ToolResult invoke(ToolCall& call, const InvokeOptions& options);

private:
    struct Binding {
        std::shared_ptr<ToolServer> server;
        std::unique_ptr<std::atomic<std::uint64_t>> next_sequence;
        std::unique_ptr<std::mutex> serial;
    };

    ToolCatalog catalog_;
    std::map<std::string, Binding, std::less<>> servers_;
};

} // namespace assetops
