#include "assetops/sim/fleet.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <tuple>

#include "assetops/sim/rng.hpp"

namespace assetops::sim {

namespace {

struct ChannelModel {
    std::string_view name;
    std::string_view unit;
    double nominal;
    double nominal_step; // per asset index
    double noise;
    double daily_amplitude;
};

constexpr std::array<ChannelModel, 3> kChannels{{
    {"supply_temp", "degC", 6.7, 0.1, 0.12, 0.10},
    {"power_kw", "kW", 310.0, 12.0, 6.0, 8.0},
    {"condenser_temp", "degC", 29.4, 0.2, 0.30, 0.40},
}};

// Shift applied inside an anomaly window, in noise deviations.
constexpr double kAnomalyShift = 6.0;

struct CatalogEntry {
    std::string_view code;
    std::string_view description;
    std::string_view action;
};

constexpr std::array<CatalogEntry, 10> kCatalog{{
    {"C07", "Condenser tube fouling", "Clean condenser tubes and verify water treatment"},
    {"C12", "Low refrigerant charge",
     "Leak-test the refrigerant circuit and recharge to nameplate charge"},
    {"C15", "Evaporator flow restriction", "Inspect strainers and verify chilled-water flow"},
    {"C21", "Compressor bearing wear", "Schedule compressor bearing inspection and vibration analysis"},
    {"C23", "Motor winding overheating", "Megger-test motor windings and check drive cooling"},
    {"C30", "Supply temperature sensor drift", "replace sensor"},
    {"C34", "Cooling tower fan failure", "Repair or replace the cooling tower fan motor"},
    {"C41", "Chilled-water control valve stuck", "Stroke-test and service the control valve actuator"},
    {"C45", "Low compressor oil pressure", "Check oil level, filter and oil pump operation"},
    {"C52", "Power quality disturbance", "Inspect starter contacts and log supply power quality"},
}};

const std::vector<std::string_view>& code_pool(std::string_view channel) {
    static const std::vector<std::string_view> supply{"C12", "C15", "C30", "C41"};
    static const std::vector<std::string_view> power{"C21", "C23", "C45", "C52"};
    static const std::vector<std::string_view> condenser{"C07", "C34"};
    if (channel == "supply_temp") return supply;
    if (channel == "power_kw") return power;
    return condenser;
}

double round3(double v) { return std::round(v * 1000.0) / 1000.0; }

std::string asset_name(int i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "CH-%02d", i + 1);
    return buf;
}

} // namespace

const ChannelSpec* AssetInfo::channel(std::string_view name) const {
    for (const auto& c : channels)
        if (c.name == name) return &c;
    return nullptr;
}

std::string series_key(std::string_view asset_id, std::string_view channel) {
    std::string k(asset_id);
    k += '/';
    k += channel;
    return k;
}

const AssetInfo* SyntheticFleet::asset(std::string_view asset_id) const {
    for (const auto& a : assets)
        if (a.asset_id == asset_id) return &a;
    return nullptr;
}

const std::vector<double>* SyntheticFleet::channel_series(std::string_view asset_id,
                                                          std::string_view channel) const {
    auto it = series.find(series_key(asset_id, channel));
    return it == series.end() ? nullptr : &it->second;
}

const ChannelStats* SyntheticFleet::channel_stats(std::string_view asset_id,
                                                  std::string_view channel) const {
    auto it = stats.find(series_key(asset_id, channel));
    return it == stats.end() ? nullptr : &it->second;
}

std::size_t SyntheticFleet::sample_count() const {
    return static_cast<std::size_t>(window.length() / kSampleIntervalMs);
}

std::pair<std::size_t, std::size_t> SyntheticFleet::sample_span(const TimeRange& range) const {
    const auto n = static_cast<Timestamp>(sample_count());
    auto index_at = [&](Timestamp t) -> std::size_t {
        if (t <= window.start()) return 0;
        const Timestamp i = (t - window.start() + kSampleIntervalMs - 1) / kSampleIntervalMs;
        return static_cast<std::size_t>(std::min(i, n));
    };
    return {index_at(range.start()), index_at(range.end())};
}

SyntheticFleet generate_fleet(std::uint64_t seed, int n_assets) {
    if (n_assets < 1) throw ValidationError("n_assets must be at least 1");

    SyntheticFleet fleet;
    fleet.seed = seed;
    for (const auto& e : kCatalog)
        fleet.failure_codes[std::string(e.code)] = {std::string(e.description), std::string(e.action)};

    const auto hours = static_cast<std::int64_t>(fleet.sample_count());
    const Timestamp ws = fleet.window.start();
    auto at_hour = [&](std::int64_t h) { return ws + h * kSampleIntervalMs; };

    std::vector<Alert> alerts;
    std::vector<WorkOrder> orders;

    for (int i = 0; i < n_assets; ++i) {
        Rng rng(mix64(seed, static_cast<std::uint64_t>(i) + 1));
        AssetInfo asset;
        asset.asset_id = asset_name(i);
        asset.site = (i % 2 == 0) ? "Site-A" : "Site-B";
        asset.model = (i % 3 == 0) ? "centrifugal-CVHF" : (i % 3 == 1 ? "screw-RTHD" : "centrifugal-19XR");
        asset.capacity_tons = 400 + 50 * static_cast<int>(rng.uniform_int(0, 6));
        asset.refrigerant = (i % 2 == 0) ? "R-134a" : "R-513A";
        asset.install_year = 2008 + static_cast<int>(rng.uniform_int(0, 12));

        // Anomaly windows: A sits inside the last seven days on supply_temp,
        // B earlier on power or condenser temperature.
        const std::int64_t a_len = rng.uniform_int(24, 48);
        const std::int64_t a_start = hours - 168 + rng.uniform_int(6, 168 - 6 - a_len);
        const std::string b_channel = (i % 2 == 0) ? "power_kw" : "condenser_temp";
        const std::int64_t b_len = rng.uniform_int(36, 60);
        const std::int64_t b_start = rng.uniform_int(35 * 24, 70 * 24);

        const auto& pool_a = code_pool("supply_temp");
        const auto& pool_b = code_pool(b_channel);
        const std::size_t a_pick = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(pool_a.size()) - 1));
        const std::size_t b_pick = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(pool_b.size()) - 1));

        AnomalyWindow wa{asset.asset_id, "supply_temp", TimeRange(at_hour(a_start), at_hour(a_start + a_len)),
                         std::string(pool_a[a_pick])};
        AnomalyWindow wb{asset.asset_id, b_channel, TimeRange(at_hour(b_start), at_hour(b_start + b_len)),
                         std::string(pool_b[b_pick])};

        for (std::size_t c = 0; c < kChannels.size(); ++c) {
            const auto& m = kChannels[c];
            const double nominal = m.nominal + m.nominal_step * i;
            asset.channels.push_back({std::string(m.name), std::string(m.unit), round3(nominal)});

            std::vector<double> values(static_cast<std::size_t>(hours));
            Rng noise(mix64(seed, stable_hash(series_key(asset.asset_id, m.name))));
            double sum = 0, sum_sq = 0;
            std::int64_t n_base = 0;
            for (std::int64_t h = 0; h < hours; ++h) {
                double v = nominal + m.daily_amplitude * std::sin(6.283185307179586 * static_cast<double>(h % 24) / 24.0) +
                           m.noise * noise.normal();
                const Timestamp t = at_hour(h);
                const bool in_a = m.name == wa.channel && wa.range.contains(t);
                const bool in_b = m.name == wb.channel && wb.range.contains(t);
                if (in_a || in_b) {
                    v += kAnomalyShift * m.noise;
                }
                v = round3(v);
                values[static_cast<std::size_t>(h)] = v;
                if (!in_a && !in_b) {
                    sum += v;
                    sum_sq += v * v;
                    ++n_base;
                }
            }
            const double mean = sum / static_cast<double>(n_base);
            const double var = std::max(0.0, sum_sq / static_cast<double>(n_base) - mean * mean);
            fleet.stats[series_key(asset.asset_id, m.name)] = {mean, std::sqrt(var)};
            fleet.series[series_key(asset.asset_id, m.name)] = std::move(values);
        }

        // Correlated alerts: the window's own code on two or three high alerts
        // plus one medium alert naming a competing code from the same pool.
        for (const AnomalyWindow* w : {&wa, &wb}) {
            const auto& pool = code_pool(w->channel);
            const std::int64_t n_high = rng.uniform_int(2, 3);
            const std::int64_t w_start = (w->range.start() - ws) / kSampleIntervalMs;
            const std::int64_t w_len = w->range.length() / kSampleIntervalMs;
            for (std::int64_t k = 1; k <= n_high; ++k) {
                Alert a;
                a.asset_id = asset.asset_id;
                a.timestamp = at_hour(w_start + k * w_len / (n_high + 1));
                a.severity = "high";
                a.failure_code = w->failure_code;
                a.text = "High " + w->channel + " deviation on " + asset.asset_id + " (" + w->failure_code + ")";
                alerts.push_back(std::move(a));
            }
            std::string rival;
            for (auto code : pool)
                if (code != w->failure_code) {
                    rival = std::string(code);
                    break;
                }
            if (!rival.empty()) {
                Alert a;
                a.asset_id = asset.asset_id;
                a.timestamp = at_hour(w_start + w_len / 5);
                a.severity = "medium";
                a.failure_code = rival;
                a.text = "Possible " + fleet.failure_codes[rival].description + " on " + asset.asset_id +
                         " (" + rival + ")";
                alerts.push_back(std::move(a));
            }
        }

        // Routine alerts every four to six days.
        for (std::int64_t h = rng.uniform_int(24, 96); h < hours; h += rng.uniform_int(96, 144)) {
            Alert a;
            a.asset_id = asset.asset_id;
            a.timestamp = at_hour(h);
            a.severity = rng.uniform() < 0.5 ? "low" : "medium";
            a.text = "Routine check: " + std::string(kChannels[static_cast<std::size_t>(rng.uniform_int(0, 2))].name) +
                     " within tolerance on " + asset.asset_id;
            alerts.push_back(std::move(a));
        }

        // Quarterly preventive maintenance plus a corrective order after window B.
        for (int q = 0; q < 3; ++q) {
            WorkOrder wo;
            wo.asset_id = asset.asset_id;
            wo.timestamp = at_hour((10 + 30 * q) * 24 + rng.uniform_int(8, 16));
            wo.failure_code = "PM";
            wo.action = "Quarterly preventive maintenance";
            if (wo.timestamp < fleet.window.end()) orders.push_back(std::move(wo));
        }
        {
            WorkOrder wo;
            wo.asset_id = asset.asset_id;
            wo.timestamp = wb.range.end() + rng.uniform_int(24, 48) * kSampleIntervalMs;
            wo.failure_code = wb.failure_code;
            wo.action = fleet.failure_codes[wb.failure_code].recommended_action;
            orders.push_back(std::move(wo));
        }

        fleet.anomalies.push_back(std::move(wa));
        fleet.anomalies.push_back(std::move(wb));
        fleet.assets.push_back(std::move(asset));
    }

    auto by_asset_time = [](const auto& a, const auto& b) {
        return std::tie(a.asset_id, a.timestamp) < std::tie(b.asset_id, b.timestamp);
    };
    std::stable_sort(alerts.begin(), alerts.end(), by_asset_time);
    std::stable_sort(orders.begin(), orders.end(), by_asset_time);
    for (std::size_t k = 0; k < alerts.size(); ++k) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "AL-%04zu", k + 1);
        alerts[k].alert_id = buf;
    }
    for (std::size_t k = 0; k < orders.size(); ++k) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "WO-%04zu", k + 1001);
        orders[k].wo_id = buf;
    }
    fleet.alerts = std::move(alerts);
    fleet.work_orders = std::move(orders);
    return fleet;
}

Json SyntheticFleet::to_json() const {
    Json j;
    j["seed"] = seed;
    j["window"] = window.to_json();
    j["sample_interval_ms"] = kSampleIntervalMs;
    Json as = Json::array();
    for (const auto& a : assets) {
        Json ch = Json::array();
        for (const auto& c : a.channels) ch.push_back({{"name", c.name}, {"unit", c.unit}, {"nominal", c.nominal}});
        as.push_back({{"asset_id", a.asset_id},
                      {"site", a.site},
                      {"model", a.model},
                      {"capacity_tons", a.capacity_tons},
                      {"refrigerant", a.refrigerant},
                      {"install_year", a.install_year},
                      {"channels", ch}});
    }
    j["assets"] = std::move(as);
    Json an = Json::array();
    for (const auto& w : anomalies)
        an.push_back({{"asset_id", w.asset_id},
                      {"channel", w.channel},
                      {"range", w.range.to_json()},
                      {"failure_code", w.failure_code}});
    j["anomalies"] = std::move(an);
    Json wos = Json::array();
    for (const auto& w : work_orders)
        wos.push_back({{"wo_id", w.wo_id},
                       {"asset_id", w.asset_id},
                       {"timestamp", w.timestamp},
                       {"failure_code", w.failure_code},
                       {"action", w.action}});
    j["work_orders"] = std::move(wos);
    Json al = Json::array();
    for (const auto& a : alerts)
        al.push_back({{"alert_id", a.alert_id},
                      {"asset_id", a.asset_id},
                      {"timestamp", a.timestamp},
                      {"severity", a.severity},
                      {"text", a.text},
                      {"failure_code", a.failure_code}});
    j["alerts"] = std::move(al);
    Json fc = Json::object();
    for (const auto& [code, info] : failure_codes)
        fc[code] = {{"description", info.description}, {"recommended_action", info.recommended_action}};
    j["failure_codes"] = std::move(fc);
    Json st = Json::object();
    for (const auto& [key, s] : stats) st[key] = {{"mean", s.mean}, {"stddev", s.stddev}};
    j["stats"] = std::move(st);
    Json se = Json::object();
    for (const auto& [key, v] : series) se[key] = v;
    j["series"] = std::move(se);
    return j;
}

SyntheticFleet SyntheticFleet::from_json(const Json& j) {
    try {
        SyntheticFleet f;
        f.seed = j.at("seed").get<std::uint64_t>();
        f.window = TimeRange::from_json(j.at("window"));
        if (j.value("sample_interval_ms", kSampleIntervalMs) != kSampleIntervalMs)
            throw ValidationError("unsupported sample interval");
        for (const auto& a : j.at("assets")) {
            AssetInfo info;
            info.asset_id = a.at("asset_id").get<std::string>();
            info.site = a.at("site").get<std::string>();
            info.model = a.value("model", std::string{});
            info.capacity_tons = a.value("capacity_tons", 0);
            info.refrigerant = a.value("refrigerant", std::string{});
            info.install_year = a.value("install_year", 0);
            for (const auto& c : a.at("channels"))
                info.channels.push_back({c.at("name").get<std::string>(), c.at("unit").get<std::string>(),
                                         c.value("nominal", 0.0)});
            f.assets.push_back(std::move(info));
        }
        for (const auto& w : j.at("anomalies"))
            f.anomalies.push_back({w.at("asset_id").get<std::string>(), w.at("channel").get<std::string>(),
                                   TimeRange::from_json(w.at("range")), w.at("failure_code").get<std::string>()});
        for (const auto& w : j.at("work_orders"))
            f.work_orders.push_back({w.at("wo_id").get<std::string>(), w.at("asset_id").get<std::string>(),
                                     w.at("timestamp").get<Timestamp>(), w.at("failure_code").get<std::string>(),
                                     w.at("action").get<std::string>()});
        for (const auto& a : j.at("alerts"))
            f.alerts.push_back({a.at("alert_id").get<std::string>(), a.at("asset_id").get<std::string>(),
                                a.at("timestamp").get<Timestamp>(), a.at("severity").get<std::string>(),
                                a.at("text").get<std::string>(), a.value("failure_code", std::string{})});
        for (const auto& [code, info] : j.at("failure_codes").items())
            f.failure_codes[code] = {info.at("description").get<std::string>(),
                                     info.at("recommended_action").get<std::string>()};
        for (const auto& [key, s] : j.at("stats").items())
            f.stats[key] = {s.at("mean").get<double>(), s.at("stddev").get<double>()};
        for (const auto& [key, v] : j.at("series").items()) f.series[key] = v.get<std::vector<double>>();
        return f;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed fleet file: ") + e.what());
    }
}

} // namespace assetops::sim
