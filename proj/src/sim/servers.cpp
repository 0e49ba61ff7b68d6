#include "assetops/sim/servers.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace assetops::sim {

std::vector<double> forecast_persistence_trend(std::span<const double> history, int horizon) {
    if (history.empty()) throw std::invalid_argument("empty history");
    if (horizon < 1 || horizon > kMaxForecastHorizon)
        throw std::invalid_argument("horizon must be in [1, " + std::to_string(kMaxForecastHorizon) + "]");
    const double last = history.back();
    const double step = history.size() > 1
                            ? (last - history.front()) / static_cast<double>(history.size() - 1)
                            : 0.0;
    std::vector<double> out(static_cast<std::size_t>(horizon));
    for (int k = 1; k <= horizon; ++k) out[static_cast<std::size_t>(k - 1)] = last + step * k;
    return out;
}

double anomaly_score(double value, const ChannelStats& stats) {
    const double dev = std::abs(value - stats.mean);
    if (stats.stddev <= 0.0) return dev == 0.0 ? 0.0 : 1.0;
    return std::min(1.0, dev / stats.stddev / 6.0);
}

namespace {

ParamSpec str(std::string name, bool required = true) {
    return ParamSpec{std::move(name), ParamType::string, required, {}, {}, {}};
}
ParamSpec ts(std::string name) { return ParamSpec{std::move(name), ParamType::timestamp, true, {}, {}, {}}; }

double round3(double v) { return std::round(v * 1000.0) / 1000.0; }

TimeRange range_arg(const Json& args) {
    return TimeRange(args.at("start").get<Timestamp>(), args.at("end").get<Timestamp>());
}

Json series_json(const SyntheticFleet& fleet, const std::vector<double>& values, std::size_t first,
                 std::size_t last) {
    Json s = Json::array();
    for (std::size_t i = first; i < last; ++i) s.push_back(Json::array({fleet.sample_time(i), values[i]}));
    return s;
}

const std::vector<double>& require_series(const SyntheticFleet& fleet, const AssetInfo& asset,
                                          const std::string& channel) {
    const auto* values = fleet.channel_series(asset.asset_id, channel);
    if (!values || !asset.channel(channel))
        throw std::runtime_error("unknown channel '" + channel + "' on " + asset.asset_id);
    return *values;
}

} // namespace

std::vector<ToolSchema> simulated_tool_schemas() {
    std::vector<ToolSchema> out;
    out.push_back({"iot", "get_sensor_history", "Hourly readings of one channel over [start, end)",
                   {str("asset_id"), str("channel"), ts("start"), ts("end")}});
    out.push_back({"iot", "list_channels", "Channels reported by an asset", {str("asset_id")}});
    out.push_back({"tsfm", "forecast", "Forecast a channel from its history",
                   {str("asset_id"), str("channel"), ts("start"), ts("end"),
                    ParamSpec{"horizon", ParamType::integer, true, {}, 1, kMaxForecastHorizon}}});
    out.push_back({"tsfm", "anomaly_scores", "Per-sample anomaly scores in [0,1]",
                   {str("asset_id"), str("channel"), ts("start"), ts("end")}});
    out.push_back({"workorder", "query", "Work orders of an asset in [start, end)",
                   {str("asset_id"), ts("start"), ts("end")}});
    out.push_back({"events", "query_alerts", "Alerts of an asset in [start, end)",
                   {str("asset_id"), ts("start"), ts("end"),
                    ParamSpec{"min_severity", ParamType::enumeration, false, {"low", "medium", "high"}, {}, {}}}});
    out.push_back({"fmsr", "map_failure_codes", "Describe comma-separated failure codes", {str("codes")}});
    out.push_back({"utilities", "site_metadata", "Static metadata of an asset", {str("asset_id")}});
    out.push_back({"utilities", "convert_units", "Convert a value between engineering units",
                   {ParamSpec{"value", ParamType::real, true, {}, {}, {}},
                    ParamSpec{"from", ParamType::enumeration, true, {"degC", "degF", "kW", "tons"}, {}, {}},
                    ParamSpec{"to", ParamType::enumeration, true, {"degC", "degF", "kW", "tons"}, {}, {}}}});
    return out;
}

ToolCatalog simulated_tool_catalog() {
    ToolCatalog c;
    for (auto& s : simulated_tool_schemas()) c.add(std::move(s));
    return c;
}

SimulatedServer::SimulatedServer(std::string name, std::shared_ptr<const SyntheticFleet> fleet,
                                 LatencyModel model, std::uint64_t seed)
    : name_(std::move(name)), fleet_(std::move(fleet)), model_(model), seed_(seed) {
    if (!fleet_) throw ValidationError("simulated server needs a fleet");
}

std::vector<ToolSchema> SimulatedServer::schemas() const {
    std::vector<ToolSchema> out;
    for (auto& s : simulated_tool_schemas())
        if (s.server == name_) out.push_back(std::move(s));
    return out;
}

const AssetInfo& SimulatedServer::require_asset(const Json& args) const {
    const auto id = args.at("asset_id").get<std::string>();
    const AssetInfo* a = fleet_->asset(id);
    if (!a) throw std::runtime_error("unknown asset " + id);
    return *a;
}

ServerReply SimulatedServer::handle(const ServerRequest& request) {
    ServerReply reply;
    std::int64_t size = 0;
    if (model_.fails(seed_, name_, request.sequence)) {
        reply.ok = false;
        reply.error = "injected fault on " + name_ + " (sequence " + std::to_string(request.sequence) + ")";
        reply.latency_ms = model_.sample(seed_, name_, request.sequence, 0);
        return reply;
    }
    try {
        reply.payload = execute(request.tool, request.args, size, reply.db_queries);
    } catch (const std::exception& e) {
        reply.ok = false;
        reply.error = e.what();
        reply.payload = nullptr;
    }
    reply.latency_ms = model_.sample(seed_, name_, request.sequence, size);
    // Database time is the bulk of a data server's service time.
    for (auto& q : reply.db_queries) q.latency_ms = (reply.latency_ms * 3) / 5;
    if (!reply.ok) {
        for (auto& q : reply.db_queries) q.error = reply.error;
    }
    return reply;
}

Json IotServer::execute(const std::string& tool, const Json& args, std::int64_t& result_size,
                        std::vector<DbQueryRecord>& queries) const {
    if (tool == "list_channels") {
        queries.push_back({"find_asset", 0, 0, {}});
        const AssetInfo& asset = require_asset(args);
        Json ch = Json::array();
        for (const auto& c : asset.channels) ch.push_back({{"name", c.name}, {"unit", c.unit}});
        queries.back().documents = 1;
        result_size = static_cast<std::int64_t>(asset.channels.size());
        return Json{{"asset_id", asset.asset_id}, {"channels", ch}};
    }
    if (tool != "get_sensor_history") throw std::runtime_error("unsupported tool iot." + tool);
    queries.push_back({"find_sensor_readings", 0, 0, {}});
    const AssetInfo& asset = require_asset(args);
    const auto channel = args.at("channel").get<std::string>();
    const auto& values = require_series(fleet(), asset, channel);
    const auto [first, last] = fleet().sample_span(range_arg(args));
    result_size = static_cast<std::int64_t>(last - first);
    queries.back().documents = result_size;
    return Json{{"asset_id", asset.asset_id},
                {"channel", channel},
                {"unit", asset.channel(channel)->unit},
                {"series", series_json(fleet(), values, first, last)}};
}

Json TsfmServer::execute(const std::string& tool, const Json& args, std::int64_t& result_size,
                         std::vector<DbQueryRecord>&) const {
    const AssetInfo& asset = require_asset(args);
    const auto channel = args.at("channel").get<std::string>();
    const auto& values = require_series(fleet(), asset, channel);
    const TimeRange range = range_arg(args);
    const auto [first, last] = fleet().sample_span(range);
    result_size = static_cast<std::int64_t>(last - first);

    if (tool == "forecast") {
        if (first == last) throw std::runtime_error("empty history in requested range");
        const int horizon = args.at("horizon").get<int>();
        const std::span<const double> history(values.data() + first, last - first);
        const auto predicted = forecast_persistence_trend(history, horizon);
        Json s = Json::array();
        const Timestamp t0 = fleet().sample_time(last - 1);
        for (std::size_t k = 0; k < predicted.size(); ++k)
            s.push_back(Json::array({t0 + static_cast<Timestamp>(k + 1) * kSampleIntervalMs, round3(predicted[k])}));
        return Json{{"asset_id", asset.asset_id},
                    {"channel", channel},
                    {"horizon", horizon},
                    {"history_points", result_size},
                    {"series", s}};
    }
    if (tool == "anomaly_scores") {
        const ChannelStats* st = fleet().channel_stats(asset.asset_id, channel);
        Json s = Json::array();
        for (std::size_t i = first; i < last; ++i)
            s.push_back(Json::array({fleet().sample_time(i), round3(anomaly_score(values[i], *st))}));
        return Json{{"asset_id", asset.asset_id}, {"channel", channel}, {"series", s}};
    }
    throw std::runtime_error("unsupported tool tsfm." + tool);
}

Json WorkOrderServer::execute(const std::string& tool, const Json& args, std::int64_t& result_size,
                              std::vector<DbQueryRecord>& queries) const {
    if (tool != "query") throw std::runtime_error("unsupported tool workorder." + tool);
    queries.push_back({"find_work_orders", 0, 0, {}});
    const AssetInfo& asset = require_asset(args);
    const TimeRange range = range_arg(args);
    Json items = Json::array();
    for (const auto& wo : fleet().work_orders) {
        if (wo.asset_id != asset.asset_id || !range.contains(wo.timestamp)) continue;
        items.push_back({{"id", wo.wo_id},
                         {"timestamp", wo.timestamp},
                         {"failure_code", wo.failure_code},
                         {"action", wo.action}});
    }
    result_size = static_cast<std::int64_t>(items.size());
    queries.back().documents = result_size;
    return Json{{"asset_id", asset.asset_id}, {"items", items}};
}

Json EventsServer::execute(const std::string& tool, const Json& args, std::int64_t& result_size,
                           std::vector<DbQueryRecord>&) const {
    if (tool != "query_alerts") throw std::runtime_error("unsupported tool events." + tool);
    const AssetInfo& asset = require_asset(args);
    const TimeRange range = range_arg(args);
    auto rank = [](const std::string& s) { return s == "high" ? 2 : (s == "medium" ? 1 : 0); };
    const int min_rank = args.contains("min_severity") ? rank(args["min_severity"].get<std::string>()) : 0;
    Json items = Json::array();
    for (const auto& a : fleet().alerts) {
        if (a.asset_id != asset.asset_id || !range.contains(a.timestamp) || rank(a.severity) < min_rank) continue;
        Json item{{"id", a.alert_id}, {"timestamp", a.timestamp}, {"severity", a.severity}, {"text", a.text}};
        if (!a.failure_code.empty()) item["failure_code"] = a.failure_code;
        items.push_back(std::move(item));
    }
    result_size = static_cast<std::int64_t>(items.size());
    return Json{{"asset_id", asset.asset_id}, {"items", items}};
}

Json FmsrServer::execute(const std::string& tool, const Json& args, std::int64_t& result_size,
                         std::vector<DbQueryRecord>&) const {
    if (tool != "map_failure_codes") throw std::runtime_error("unsupported tool fmsr." + tool);
    std::stringstream ss(args.at("codes").get<std::string>());
    std::string code;
    Json items = Json::array();
    while (std::getline(ss, code, ',')) {
        code.erase(0, code.find_first_not_of(' '));
        code.erase(code.find_last_not_of(' ') + 1);
        if (code.empty()) continue;
        auto it = fleet().failure_codes.find(code);
        if (it == fleet().failure_codes.end()) {
            items.push_back({{"id", code}, {"code", code}, {"known", false}, {"description", "unknown failure code"},
                             {"recommended_action", ""}});
        } else {
            items.push_back({{"id", code}, {"code", code}, {"known", true}, {"description", it->second.description},
                             {"recommended_action", it->second.recommended_action}});
        }
    }
    result_size = static_cast<std::int64_t>(items.size());
    return Json{{"items", items}};
}

Json UtilitiesServer::execute(const std::string& tool, const Json& args, std::int64_t& result_size,
                              std::vector<DbQueryRecord>&) const {
    if (tool == "site_metadata") {
        const AssetInfo& a = require_asset(args);
        Json ch = Json::array();
        Json setpoints = Json::object();
        for (const auto& c : a.channels) {
            ch.push_back({{"name", c.name}, {"unit", c.unit}});
            setpoints[c.name] = c.nominal;
        }
        result_size = 1;
        return Json{{"asset_id", a.asset_id},       {"site", a.site},
                    {"model", a.model},             {"capacity_tons", a.capacity_tons},
                    {"refrigerant", a.refrigerant}, {"install_year", a.install_year},
                    {"channels", ch},               {"setpoints", setpoints}};
    }
    if (tool == "convert_units") {
        const double v = args.at("value").get<double>();
        const auto from = args.at("from").get<std::string>();
        const auto to = args.at("to").get<std::string>();
        double out;
        if (from == to) out = v;
        else if (from == "degC" && to == "degF") out = v * 9.0 / 5.0 + 32.0;
        else if (from == "degF" && to == "degC") out = (v - 32.0) * 5.0 / 9.0;
        else if (from == "kW" && to == "tons") out = v / 3.517;
        else if (from == "tons" && to == "kW") out = v * 3.517;
        else throw std::runtime_error("cannot convert " + from + " to " + to);
        result_size = 1;
        return Json{{"value", round3(out)}, {"unit", to}};
    }
    throw std::runtime_error("unsupported tool utilities." + tool);
}

void register_simulated_servers(ToolRegistry& registry, std::shared_ptr<const SyntheticFleet> fleet,
                                const LatencyConfig& config, std::uint64_t seed) {
    registry.register_server(std::make_shared<IotServer>(fleet, config.server("iot"), seed));
    registry.register_server(std::make_shared<TsfmServer>(fleet, config.server("tsfm"), seed));
    registry.register_server(std::make_shared<WorkOrderServer>(fleet, config.server("workorder"), seed));
    registry.register_server(std::make_shared<EventsServer>(fleet, config.server("events"), seed));
    registry.register_server(std::make_shared<FmsrServer>(fleet, config.server("fmsr"), seed));
    registry.register_server(std::make_shared<UtilitiesServer>(fleet, config.server("utilities"), seed));
}

} // namespace assetops::sim
