#include "assetops/app/service.hpp"

#include <cstdio>

#include <httplib.h>

namespace assetops {

namespace {

void send_error(httplib::Response& res, int status, const std::string& code, const std::string& message) {
    res.status = status;
    res.set_content(Json{{"error", {{"code", code}, {"message", message}}}}.dump(), "application/json");
}

void send_json(httplib::Response& res, int status, const Json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

} // namespace

Service::Service(WorldConfig world) : world_(std::move(world)), http_(std::make_unique<httplib::Server>()) {
    install_routes();
}

Service::~Service() { stop(); }

std::size_t Service::session_count() const {
    std::lock_guard lk(mutex_);
    return sessions_.size();
}

std::shared_ptr<Service::Session> Service::find(const std::string& id) const {
    std::lock_guard lk(mutex_);
    auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
}

void Service::install_routes() {
    // Address reuse only: a second service on a busy port must fail to bind.
    http_->set_socket_options([](socket_t sock) {
        int yes = 1;
        setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
    });
    http_->set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                {"Access-Control-Allow-Headers", "Content-Type"},
                                {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
    http_->Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

    http_->Get("/health", [this](const httplib::Request&, httplib::Response& res) {
        send_json(res, 200, Json{{"status", "ok"}, {"sessions", session_count()}});
    });

    http_->Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) {
        Json body = Json::object();
        if (!req.body.empty()) {
            body = Json::parse(req.body, nullptr, false);
            if (body.is_discarded() || !body.is_object())
                return send_error(res, 400, "bad_request", "body must be a JSON object");
        }
        auto s = std::make_shared<Session>();
        Category category = Category::operational_monitoring;
        try {
            s->architecture = architecture_from_string(body.value("architecture", std::string("supervisor")));
            if (body.contains("category")) category = category_from_string(body["category"].get<std::string>());
        } catch (const std::exception& e) {
            return send_error(res, 400, "bad_request", e.what());
        }
        {
            std::lock_guard lk(mutex_);
            char buf[32];
            std::snprintf(buf, sizeof buf, "S%04d", next_id_++);
            s->id = buf;
            s->clock = std::make_unique<Clock>(world_.config().clock);
            s->env = world_.env();
            s->env.clock = s->clock.get();
            s->agent = make_agent(s->env, s->architecture, s->id, category);
            sessions_.emplace(s->id, s);
        }
        send_json(res, 201,
                  Json{{"session_id", s->id},
                       {"architecture", to_string(s->architecture)},
                       {"category", to_string(category)}});
    });

    http_->Post(R"(/sessions/([^/]+)/turns)", [this](const httplib::Request& req, httplib::Response& res) {
        auto s = find(req.matches[1]);
        if (!s) return send_error(res, 404, "not_found", "unknown session " + std::string(req.matches[1]));
        const Json body = Json::parse(req.body, nullptr, false);
        if (body.is_discarded() || !body.is_object() || !body.contains("text") || !body["text"].is_string() ||
            body["text"].get<std::string>().empty())
            return send_error(res, 400, "bad_request", "body must be {\"text\": non-empty string}");
        const std::string text = body["text"].get<std::string>();
        res.set_chunked_content_provider("application/x-ndjson", [s, text](std::size_t, httplib::DataSink& sink) {
            std::lock_guard lk(s->turn_mutex);
            auto emit = [&](const Json& event) {
                const std::string line = event.dump() + "\n";
                if (sink.is_writable()) sink.write(line.data(), line.size());
            };
            try {
                s->agent->run_turn(text, emit);
            } catch (const std::exception& e) {
                emit(Json{{"type", "error"}, {"error", {{"code", "turn_failed"}, {"message", e.what()}}}});
            }
            sink.done();
            return true;
        });
    });

    http_->Get(R"(/sessions/([^/]+)/artifacts)", [this](const httplib::Request& req, httplib::Response& res) {
        auto s = find(req.matches[1]);
        if (!s) return send_error(res, 404, "not_found", "unknown session " + std::string(req.matches[1]));
        std::lock_guard lk(s->turn_mutex);
        Json list = Json::array();
        for (const auto* a : s->agent->store().list_all()) list.push_back(a->to_json(false));
        send_json(res, 200, Json{{"session_id", s->id}, {"artifacts", list}});
    });

    http_->Get(R"(/sessions/([^/]+)/profile)", [this](const httplib::Request& req, httplib::Response& res) {
        auto s = find(req.matches[1]);
        if (!s) return send_error(res, 404, "not_found", "unknown session " + std::string(req.matches[1]));
        std::lock_guard lk(s->turn_mutex);
        send_json(res, 200, world_.profiler().snapshot(s->id).to_json());
    });

    http_->set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        std::string what = "internal error";
        try {
            std::rethrow_exception(ep);
        } catch (const std::exception& e) {
            what = e.what();
        } catch (...) {
        }
        send_error(res, 500, "internal", what);
    });
}

int Service::bind(const std::string& host, int port) {
    const int bound = port == 0 ? http_->bind_to_any_port(host) : (http_->bind_to_port(host, port) ? port : -1);
    if (bound <= 0) throw Error("cannot bind service on " + host + ":" + std::to_string(port) + " (port busy?)");
    return bound;
}

int Service::start(const std::string& host, int port) {
    const int bound = bind(host, port);
    thread_ = std::thread([this] { http_->listen_after_bind(); });
    http_->wait_until_ready();
    return bound;
}

void Service::serve(const std::string& host, int port, const std::function<void(int)>& on_ready) {
    const int bound = bind(host, port);
    if (on_ready) on_ready(bound);
    http_->listen_after_bind();
}

void Service::shutdown() {
    if (http_) http_->stop();
}

void Service::stop() {
    if (http_) http_->stop();
    if (thread_.joinable()) thread_.join();
}

} // namespace assetops
