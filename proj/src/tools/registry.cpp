#include "assetops/tools/registry.hpp"

#include <chrono>
#include <thread>

namespace assetops {

void ToolRegistry::register_server(std::shared_ptr<ToolServer> server) {
    if (!server) throw ValidationError("null tool server");
    const std::string name = server->name();
    if (servers_.count(name)) throw ValidationError("duplicate server: " + name);
    for (auto schema : server->schemas()) {
        if (schema.server != name)
            throw ValidationError("schema " + schema.tool + " does not belong to server " + name);
        catalog_.add(std::move(schema));
    }
    Binding b;
    b.server = std::move(server);
    b.next_sequence = std::make_unique<std::atomic<std::uint64_t>>(0);
    b.serial = std::make_unique<std::mutex>();
    servers_.emplace(name, std::move(b));
}

ToolServer* ToolRegistry::server(std::string_view name) const {
    auto it = servers_.find(name);
    return it == servers_.end() ? nullptr : it->second.server.get();
}

std::vector<std::string> ToolRegistry::server_names() const {
    std::vector<std::string> out;
    for (const auto& [name, _] : servers_) out.push_back(name);
    return out;
}

std::uint64_t ToolRegistry::reserve_sequence(std::string_view server, std::uint64_t count) {
    auto it = servers_.find(server);
    if (it == servers_.end()) throw NotFoundError("unknown server: " + std::string(server));
    return it->second.next_sequence->fetch_add(count);
}

ToolResult ToolRegistry::invoke(ToolCall& call, const InvokeOptions& options) {
    if (!options.clock || !options.sink) throw ValidationError("invoke needs a clock and a sink");
    if (!validate_name(call))
        throw ValidationError("invoke on unregistered tool " + call.qualified_name());
    if (auto v = validate_schema(call); !v.empty())
        throw ValidationError("invoke on schema-invalid call " + call.call_id + " (" +
                              v.front().to_string() + ")");

    Binding& binding = servers_.find(call.server)->second;
    Clock& clock = *options.clock;
    const bool virtual_time = clock.is_virtual();

    ServerRequest request{call.call_id, call.tool, call.args,
                          options.sequence ? *options.sequence
                                           : binding.next_sequence->fetch_add(1)};

    call.started_at = virtual_time ? options.start_at.value_or(clock.now()) : clock.now();
    ServerReply reply;
    {
        std::unique_lock<std::mutex> lock;
        if (binding.server->serializes_requests()) lock = std::unique_lock(*binding.serial);
        try {
            reply = binding.server->handle(request);
        } catch (const std::exception& e) {
            reply = ServerReply{};
            reply.ok = false;
            reply.error = e.what();
        }
    }

    DurationMs latency = std::max<DurationMs>(0, reply.latency_ms);
    const bool timed_out = latency > options.budget_ms;
    if (timed_out) latency = options.budget_ms;
    if (!virtual_time && !reply.measured) {
        std::this_thread::sleep_for(std::chrono::milliseconds(latency));
    }
    if (!virtual_time) latency = std::max<DurationMs>(0, clock.now() - call.started_at);

    Json payload;
    if (timed_out) {
        call.status = ToolStatus::timeout;
        call.error_detail = "exceeded per-call budget of " + std::to_string(options.budget_ms) + " ms";
    } else if (!reply.ok) {
        call.status = ToolStatus::execution_failure;
        call.error_detail = reply.error.empty() ? std::string("server error") : reply.error;
    } else {
        call.status = ToolStatus::ok;
        call.error_detail.reset();
        payload = std::move(reply.payload);
    }
    call.latency_ms = latency;

    ProfileEvent tool_event;
    tool_event.tier = Tier::tool;
    tool_event.dialog_id = call.dialog_id;
    tool_event.turn_index = call.turn_index;
    tool_event.started_at = call.started_at;
    tool_event.latency_ms = latency;
    tool_event.detail =
        ToolEventInfo{call.server, call.tool, std::string(to_string(call.status)), call.call_id};
    options.sink->record(std::move(tool_event));

    for (const auto& q : reply.db_queries) {
        ProfileEvent db;
        db.tier = Tier::db;
        db.dialog_id = call.dialog_id;
        db.turn_index = call.turn_index;
        db.started_at = call.started_at;
        db.latency_ms = std::min(q.latency_ms, latency);
        db.detail = DbEventInfo{call.server, q.query_type, q.documents, q.error, call.call_id};
        options.sink->record(std::move(db));
    }

    return ToolResult::make(call.call_id, std::move(payload));
}

} // namespace assetops
