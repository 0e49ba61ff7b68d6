#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "assetops/core/time_range.hpp"

namespace assetops::sim {

/// Start of the fixed 90-day telemetry window (2024-01-01 00:00 UTC).
inline constexpr Timestamp kFleetStart = 1704067200000;
inline constexpr int kFleetDays = 90;
inline constexpr DurationMs kSampleIntervalMs = kHourMs;

struct ChannelSpec {
    std::string name;
    std::string unit;
    double nominal = 0.0;
};

struct AssetInfo {
    std::string asset_id;
    std::string site;
    std::string model;
    int capacity_tons = 0;
    std::string refrigerant;
    int install_year = 0;
    std::vector<ChannelSpec> channels;

    const ChannelSpec* channel(std::string_view name) const;
};

struct AnomalyWindow {
    std::string asset_id;
    std::string channel;
    TimeRange range;
    std::string failure_code;
};

struct WorkOrder {
    std::string wo_id;
    std::string asset_id;
    Timestamp timestamp = 0;
    std::string failure_code;
    std::string action;
};

struct Alert {
    std::string alert_id;
    std::string asset_id;
    Timestamp timestamp = 0;
    std::string severity; // low | medium | high
    std::string text;
    std::string failure_code; // empty for routine alerts
};

struct FailureCodeInfo {
    std::string description;
    std::string recommended_action;
};

/// Mean and standard deviation of a channel outside its anomaly windows.
struct ChannelStats {
    double mean = 0.0;
    double stddev = 0.0;
};

/// Deterministic synthetic chiller fleet: hourly telemetry with injected
/// anomaly windows, correlated alerts, work orders and a failure-code catalog.
struct SyntheticFleet {
    std::uint64_t seed = 0;
    TimeRange window{kFleetStart, kFleetStart + kFleetDays * kDayMs};
    std::vector<AssetInfo> assets;
    std::vector<AnomalyWindow> anomalies;
    std::vector<WorkOrder> work_orders;
    std::vector<Alert> alerts;
    std::map<std::string, FailureCodeInfo> failure_codes;
    /// Keyed by "<asset_id>/<channel>", one value per sample interval.
    std::map<std::string, std::vector<double>> series;
    std::map<std::string, ChannelStats> stats;

    const AssetInfo* asset(std::string_view asset_id) const;
    const std::vector<double>* channel_series(std::string_view asset_id,
                                              std::string_view channel) const;
    const ChannelStats* channel_stats(std::string_view asset_id, std::string_view channel) const;
    std::size_t sample_count() const;
    Timestamp sample_time(std::size_t i) const {
        return window.start() + static_cast<Timestamp>(i) * kSampleIntervalMs;
    }
    /// Index range [first, last) of samples whose timestamps fall in `range`.
    std::pair<std::size_t, std::size_t> sample_span(const TimeRange& range) const;

    Json to_json() const;
    static SyntheticFleet from_json(const Json& j);
};

std::string series_key(std::string_view asset_id, std::string_view channel);

/// Same (seed, n_assets) always produces a byte-identical fleet. Each asset
/// has three channels and two anomaly windows (one inside the last seven days
/// of the window, one earlier) shifted by six noise deviations.
SyntheticFleet generate_fleet(std::uint64_t seed, int n_assets);

} // namespace assetops::sim
