#include "assetops/sim/latency.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "assetops/sim/rng.hpp"

namespace assetops::sim {

DurationMs LatencyModel::sample(std::uint64_t seed, std::string_view server,
                                std::uint64_t sequence, std::int64_t result_size) const {
    DurationMs jitter = 0;
    if (jitter_ms > 0) {
        const auto bits = mix64(mix64(seed, stable_hash(server)), sequence);
        jitter = static_cast<DurationMs>(bits % static_cast<std::uint64_t>(jitter_ms + 1));
    }
    const double size_part = per_point_ms * static_cast<double>(std::max<std::int64_t>(0, result_size));
    return base_ms + jitter + static_cast<DurationMs>(std::llround(size_part));
}

bool LatencyModel::fails(std::uint64_t seed, std::string_view server, std::uint64_t sequence) const {
    if (fault_rate <= 0.0) return false;
    if (fault_rate >= 1.0) return true;
    const auto bits = mix64(mix64(seed ^ 0xFA017ull, stable_hash(server)), sequence);
    return unit_interval(bits) < fault_rate;
}

Json LatencyModel::to_json() const {
    return Json{{"base_ms", base_ms}, {"jitter_ms", jitter_ms}, {"per_point_ms", per_point_ms},
                {"fault_rate", fault_rate}};
}

namespace {

void check_keys(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + " must be an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

} // namespace

LatencyModel LatencyModel::from_json(const Json& j) {
    check_keys(j, {"base_ms", "jitter_ms", "per_point_ms", "fault_rate"}, "latency model");
    LatencyModel m;
    m.base_ms = j.value("base_ms", DurationMs{0});
    m.jitter_ms = j.value("jitter_ms", DurationMs{0});
    m.per_point_ms = j.value("per_point_ms", 0.0);
    m.fault_rate = j.value("fault_rate", 0.0);
    if (m.base_ms < 0 || m.jitter_ms < 0 || m.per_point_ms < 0)
        throw ConfigError("latency values must be non-negative");
    if (m.fault_rate < 0.0 || m.fault_rate > 1.0) throw ConfigError("fault_rate must be in [0,1]");
    return m;
}

DurationMs PlannerLatencyModel::sample(std::int64_t prompt_bytes, std::int64_t completion_tokens) const {
    const double kib = static_cast<double>(prompt_bytes) / 1024.0;
    return base_ms + static_cast<DurationMs>(std::llround(
                         per_kb_ms * kib + per_completion_token_ms * static_cast<double>(completion_tokens)));
}

const LatencyModel& LatencyConfig::server(std::string_view name) const {
    static const LatencyModel kZero{};
    auto it = servers.find(std::string(name));
    return it == servers.end() ? kZero : it->second;
}

Json LatencyConfig::to_json() const {
    Json s = Json::object();
    for (const auto& [name, m] : servers) s[name] = m.to_json();
    return Json{{"name", name},
                {"servers", s},
                {"planner",
                 {{"base_ms", planner.base_ms},
                  {"per_kb_ms", planner.per_kb_ms},
                  {"per_completion_token_ms", planner.per_completion_token_ms}}},
                {"setup_ms", setup_ms},
                {"routing_overhead_ms", routing_overhead_ms},
                {"call_budget_ms", call_budget_ms}};
}

LatencyConfig LatencyConfig::from_json(const Json& j) {
    check_keys(j, {"name", "servers", "planner", "setup_ms", "routing_overhead_ms", "call_budget_ms"},
               "latency config");
    LatencyConfig c;
    try {
        c.name = j.value("name", std::string("custom"));
        if (j.contains("servers")) {
            if (!j["servers"].is_object()) throw ConfigError("servers must be an object");
            for (auto it = j["servers"].begin(); it != j["servers"].end(); ++it)
                c.servers[it.key()] = LatencyModel::from_json(it.value());
        }
        if (j.contains("planner")) {
            const Json& p = j["planner"];
            check_keys(p, {"base_ms", "per_kb_ms", "per_completion_token_ms"}, "planner latency");
            c.planner.base_ms = p.value("base_ms", c.planner.base_ms);
            c.planner.per_kb_ms = p.value("per_kb_ms", c.planner.per_kb_ms);
            c.planner.per_completion_token_ms = p.value("per_completion_token_ms", 0.0);
        }
        c.setup_ms = j.value("setup_ms", DurationMs{0});
        c.routing_overhead_ms = j.value("routing_overhead_ms", DurationMs{0});
        c.call_budget_ms = j.value("call_budget_ms", DurationMs{30'000});
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed latency config: ") + e.what());
    }
    if (c.planner.base_ms < 0 || c.planner.per_kb_ms < 0 || c.planner.per_completion_token_ms < 0 ||
        c.setup_ms < 0 || c.routing_overhead_ms < 0 || c.call_budget_ms <= 0)
        throw ConfigError("latency config values must be non-negative (budget positive)");
    return c;
}

LatencyConfig LatencyConfig::fast() {
    LatencyConfig c;
    c.name = "fast";
    c.servers = {
        {"iot", {20, 5, 0.01, 0.0}},      {"tsfm", {60, 10, 0.05, 0.0}},
        {"workorder", {8, 2, 0.0, 0.0}},  {"events", {8, 2, 0.0, 0.0}},
        {"fmsr", {5, 1, 0.0, 0.0}},       {"utilities", {5, 1, 0.0, 0.0}},
    };
    c.planner = {800, 50.0, 0.0};
    c.setup_ms = 0;
    c.routing_overhead_ms = 0;
    c.call_budget_ms = 30'000;
    return c;
}

LatencyConfig LatencyConfig::paper_shape() {
    // Per-server means follow the per-dialog ordering of the reference
    // profile: TSFM far above IoT, IoT above the four lookup servers.
    LatencyConfig c;
    c.name = "paper-shape";
    c.servers = {
        {"iot", {1800, 400, 2.0, 0.0}},      {"tsfm", {5500, 1500, 20.0, 0.0}},
        {"workorder", {450, 150, 0.0, 0.0}}, {"events", {400, 120, 0.0, 0.0}},
        {"fmsr", {380, 100, 0.0, 0.0}},      {"utilities", {350, 100, 0.0, 0.0}},
    };
    c.planner = {3500, 60.0, 2.0};
    c.setup_ms = 60'000;
    c.routing_overhead_ms = 250;
    c.call_budget_ms = 30'000;
    return c;
}

LatencyConfig LatencyConfig::load(const std::string& name_or_path) {
    if (name_or_path == "fast") return fast();
    if (name_or_path == "paper-shape") return paper_shape();
    std::ifstream in(name_or_path);
    if (!in) throw ConfigError("cannot open latency config: " + name_or_path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("latency config " + name_or_path + ": " + e.what());
    }
    return from_json(j);
}

} // namespace assetops::sim
