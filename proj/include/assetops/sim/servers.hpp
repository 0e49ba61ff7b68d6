#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "assetops/sim/fleet.hpp"
#include "assetops/sim/latency.hpp"
#include "assetops/tools/registry.hpp"

namespace assetops::sim {

inline constexpr int kMaxForecastHorizon = 168;

/// Persistence plus trend: last value + k * mean step of the history.
/// Throws std::invalid_argument on empty history or horizon outside
/// [1, kMaxForecastHorizon].
std::vector<double> forecast_persistence_trend(std::span<const double> history, int horizon);

/// min(1, |z| / 6) against the channel's non-anomalous statistics.
double anomaly_score(double value, const ChannelStats& stats);

/// Schemas of the six simulated servers (iot, tsfm, workorder, events, fmsr,
/// utilities), independent of any fleet.
std::vector<ToolSchema> simulated_tool_schemas();
ToolCatalog simulated_tool_catalog();

/// Common state of a simulated server: immutable fleet, latency model, seed.
class SimulatedServer : public ToolServer {
public:
    SimulatedServer(std::string name, std::shared_ptr<const SyntheticFleet> fleet, LatencyModel model,
                    std::uint64_t seed);

    std::string name() const override { return name_; }
    std::vector<ToolSchema> schemas() const override;
    ServerReply handle(const ServerRequest& request) override;

protected:
    /// Produces the payload and the result size that feeds the latency model.
    /// Throws on unknown entities or unsupported arguments.
    virtual Json execute(const std::string& tool, const Json& args, std::int64_t& result_size,
                         std::vector<DbQueryRecord>& queries) const = 0;

    const SyntheticFleet& fleet() const { return *fleet_; }
    const AssetInfo& require_asset(const Json& args) const;

private:
    std::string name_;
    std::shared_ptr<const SyntheticFleet> fleet_;
    LatencyModel model_;
    std::uint64_t seed_;
};

class IotServer final : public SimulatedServer {
public:
    IotServer(std::shared_ptr<const SyntheticFleet> fleet, LatencyModel model, std::uint64_t seed)
        : SimulatedServer("iot", std::move(fleet), model, seed) {}

protected:
    Json execute(const std::string& tool, const Json& args, std::int64_t& result_size,
                 std::vector<DbQueryRecord>& queries) const override;
};

class TsfmServer final : public SimulatedServer {
public:
    TsfmServer(std::shared_ptr<const SyntheticFleet> fleet, LatencyModel model, std::uint64_t seed)
        : SimulatedServer("tsfm", std::move(fleet), model, seed) {}

protected:
    Json execute(const std::string& tool, const Json& args, std::int64_t& result_size,
                 std::vector<DbQueryRecord>& queries) const override;
};

class WorkOrderServer final : public SimulatedServer {
public:
    WorkOrderServer(std::shared_ptr<const SyntheticFleet> fleet, LatencyModel model, std::uint64_t seed)
        : SimulatedServer("workorder", std::move(fleet), model, seed) {}

protected:
    Json execute(const std::string& tool, const Json& args, std::int64_t& result_size,
                 std::vector<DbQueryRecord>& queries) const override;
};

class EventsServer final : public SimulatedServer {
public:
    EventsServer(std::shared_ptr<const SyntheticFleet> fleet, LatencyModel model, std::uint64_t seed)
        : SimulatedServer("events", std::move(fleet), model, seed) {}

protected:
    Json execute(const std::string& tool, const Json& args, std::int64_t& result_size,
                 std::vector<DbQueryRecord>& queries) const override;
};

class FmsrServer final : public SimulatedServer {
public:
    FmsrServer(std::shared_ptr<const SyntheticFleet> fleet, LatencyModel model, std::uint64_t seed)
        : SimulatedServer("fmsr", std::move(fleet), model, seed) {}

protected:
    Json execute(const std::string& tool, const Json& args, std::int64_t& result_size,
                 std::vector<DbQueryRecord>& queries) const override;
};

/// Minimal stand-in: site metadata and unit conversion.
class UtilitiesServer final : public SimulatedServer {
public:
    UtilitiesServer(std::shared_ptr<const SyntheticFleet> fleet, LatencyModel model, std::uint64_t seed)
        : SimulatedServer("utilities", std::move(fleet), model, seed) {}

protected:
    Json execute(const std::string& tool, const Json& args, std::int64_t& result_size,
                 std::vector<DbQueryRecord>& queries) const override;
};

/// Registers all six simulated servers over `fleet`.
void register_simulated_servers(ToolRegistry& registry, std::shared_ptr<const SyntheticFleet> fleet,
                                const LatencyConfig& config, std::uint64_t seed);

} // namespace assetops::sim
