#include "assetops/tools/wire.hpp"

#include <httplib.h>

namespace assetops::wire {

namespace {

const Json& require(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'", 0);
    return j.at(key);
}

} // namespace

Json encode_request(const ServerRequest& request) {
    return Json{{"call_id", request.call_id}, {"tool", request.tool}, {"args", request.args}};
}

ServerRequest decode_request(const Json& j) {
    ServerRequest r;
    const Json& id = require(j, "call_id");
    const Json& tool = require(j, "tool");
    const Json& args = require(j, "args");
    if (!id.is_string() || !tool.is_string() || !args.is_object())
        throw ParseError("malformed tool request", 0);
    r.call_id = id.get<std::string>();
    r.tool = tool.get<std::string>();
    r.args = args;
    if (j.contains("sequence") && j["sequence"].is_number_unsigned()) r.sequence = j["sequence"].get<std::uint64_t>();
    return r;
}

Json encode_response(const std::string& call_id, const ServerReply& reply) {
    Json j{{"call_id", call_id},
           {"status", reply.ok ? "ok" : "execution-failure"},
           {"payload", reply.ok ? reply.payload : Json(nullptr)},
           {"error_detail", reply.ok ? Json(nullptr) : Json(reply.error)},
           {"latency_ms", reply.latency_ms}};
    if (!reply.db_queries.empty()) {
        Json q = Json::array();
        for (const auto& d : reply.db_queries)
            q.push_back({{"query_type", d.query_type}, {"latency_ms", d.latency_ms}, {"documents", d.documents},
                         {"error", d.error}});
        j["db_queries"] = std::move(q);
    }
    return j;
}

ServerReply decode_response(const Json& j, const std::string& expected_call_id) {
    const Json& id = require(j, "call_id");
    const Json& status = require(j, "status");
    if (!id.is_string() || id.get<std::string>() != expected_call_id)
        throw ParseError("response call_id does not match request", 0);
    if (!status.is_string()) throw ParseError("malformed status", 0);
    ServerReply r;
    r.ok = status.get<std::string>() == "ok";
    if (r.ok) r.payload = j.value("payload", Json());
    else {
        const Json& e = j.contains("error_detail") ? j["error_detail"] : Json();
        r.error = e.is_string() ? e.get<std::string>() : status.get<std::string>();
    }
    if (j.contains("latency_ms") && j["latency_ms"].is_number_integer()) {
        r.latency_ms = j["latency_ms"].get<DurationMs>();
    }
    if (j.contains("db_queries")) {
        for (const auto& q : j["db_queries"])
            r.db_queries.push_back({q.value("query_type", ""), q.value("latency_ms", DurationMs{0}),
                                    q.value("documents", std::int64_t{0}), q.value("error", "")});
    }
    return r;
}

Json serve_one(ToolServer& server, const Json& request) {
    const ServerRequest req = decode_request(request);
    ServerReply reply;
    try {
        reply = server.handle(req);
    } catch (const std::exception& e) {
        reply = ServerReply{};
        reply.ok = false;
        reply.error = e.what();
    }
    return encode_response(req.call_id, reply);
}

HttpToolEndpoint::HttpToolEndpoint(std::shared_ptr<ToolServer> server)
    : server_(std::move(server)), http_(std::make_unique<httplib::Server>()) {
    if (!server_) throw ValidationError("endpoint needs a server");
    http_->Get("/schemas", [this](const httplib::Request&, httplib::Response& res) {
        Json out = Json::array();
        for (const auto& s : server_->schemas()) out.push_back(s.to_json());
        res.set_content(out.dump(), "application/json");
    });
    http_->Post("/call", [this](const httplib::Request& req, httplib::Response& res) {
        Json body;
        try {
            body = Json::parse(req.body);
            res.set_content(serve_one(*server_, body).dump(), "application/json");
        } catch (const std::exception& e) {
            res.status = 400;
            res.set_content(Json{{"error", e.what()}}.dump(), "application/json");
        }
    });
}

HttpToolEndpoint::~HttpToolEndpoint() { stop(); }

int HttpToolEndpoint::start(const std::string& host, int port) {
    const int bound = port == 0 ? http_->bind_to_any_port(host) : (http_->bind_to_port(host, port) ? port : -1);
    if (bound <= 0) throw Error("cannot bind tool endpoint on " + host + ":" + std::to_string(port));
    thread_ = std::thread([this] { http_->listen_after_bind(); });
    http_->wait_until_ready();
    return bound;
}

void HttpToolEndpoint::stop() {
    if (http_) http_->stop();
    if (thread_.joinable()) thread_.join();
}

RemoteToolServer::RemoteToolServer(std::string name, std::string host, int port, int timeout_ms)
    : name_(std::move(name)), host_(std::move(host)), port_(port), timeout_ms_(timeout_ms) {
    httplib::Client cli(host_, port_);
    cli.set_connection_timeout(std::chrono::milliseconds(timeout_ms_));
    auto res = cli.Get("/schemas");
    if (!res || res->status != 200)
        throw Error("cannot fetch schemas from " + host_ + ":" + std::to_string(port_));
    for (const auto& sj : Json::parse(res->body)) schemas_.push_back(ToolSchema::from_json(sj));
}

ServerReply RemoteToolServer::handle(const ServerRequest& request) {
    httplib::Client cli(host_, port_);
    cli.set_connection_timeout(std::chrono::milliseconds(timeout_ms_));
    cli.set_read_timeout(std::chrono::milliseconds(timeout_ms_));
    Json body = encode_request(request);
    body["sequence"] = request.sequence;
    auto res = cli.Post("/call", body.dump(), "application/json");
    if (!res) throw std::runtime_error("transport error: " + httplib::to_string(res.error()));
    if (res->status != 200) throw std::runtime_error("tool endpoint returned HTTP " + std::to_string(res->status));
    return decode_response(Json::parse(res->body), request.call_id);
}

} // namespace assetops::wire
