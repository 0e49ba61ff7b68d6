#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "assetops/core/time_range.hpp"

namespace assetops {

enum class Specialist { data_collection, time_series, failure_reasoning, maintenance_planning };

std::string_view to_string(Specialist s);
Specialist specialist_from_string(std::string_view s);

enum class EvidenceKind {
    sensor_history,
    forecast,
    anomaly_scores,
    work_orders,
    alerts,
    failure_codes,
    maintenance_plan,
    site_metadata,
};

std::string_view to_string(EvidenceKind k);
EvidenceKind evidence_kind_from_string(std::string_view s);

/// True for kinds whose payload is a set of timestamped points or records that
/// can be cut to a sub-range and stitched back together.
bool is_range_sliceable(EvidenceKind k);

/// Scalar-valued request parameters (channel, horizon, codes...).
using ParamMap = std::map<std::string, Json>;

struct EvidenceRequest {
    std::string asset_id;
    EvidenceKind kind = EvidenceKind::sensor_history;
    std::optional<TimeRange> time_range;
    ParamMap params;

    Json to_json() const;
    static EvidenceRequest from_json(const Json& j);
    bool operator==(const EvidenceRequest&) const = default;
};

/// One contiguous piece of evidence inside an artifact: what it answers and
/// the payload that answers it. Payloads are {"series": [[ts, v], ...]} or
/// {"items": [{...}, ...]} for sliceable kinds, free-form otherwise.
struct EvidenceSlice {
    std::string asset_id;
    EvidenceKind kind = EvidenceKind::sensor_history;
    std::optional<TimeRange> range;
    ParamMap params;
    Json payload;

    /// Metadata only unless `with_payload`; then the payload is inlined too.
    Json to_json(bool with_payload) const;
    static EvidenceSlice from_json(const Json& j);
};

struct Artifact {
    std::string artifact_id;
    std::string dialog_id;
    int turn_index = 1;
    Specialist specialist = Specialist::data_collection;
    std::string asset_id;
    std::optional<TimeRange> time_range;
    EvidenceKind evidence_kind = EvidenceKind::sensor_history;
    /// call_ids of the ToolCalls that produced fresh evidence for this artifact.
    std::vector<std::string> invoked_tools;
    std::map<std::string, Json> observations;
    Json intermediate_results = Json::object();
    std::vector<std::string> assumptions;
    double confidence = 1.0;
    std::vector<EvidenceSlice> slices;
    /// Ids of stored artifacts whose evidence was reused.
    std::vector<std::string> reused_from;

    bool reused() const noexcept { return !reused_from.empty(); }
    Json to_json(bool with_payloads = false) const;
    static Artifact from_json(const Json& j);
};

/// Does `slice` answer (part of) `request`? Same asset and kind, every request
/// param equal to the slice's or absent from it, and overlapping ranges (a
/// request without a range is answered by any matching slice).
bool slice_matches(const EvidenceSlice& slice, const EvidenceRequest& request);

/// Keeps only points/records with timestamps inside `range`. Non-sliceable
/// payloads are returned unchanged.
Json clip_payload(const Json& payload, const TimeRange& range);

/// Union of two sliceable payloads: series by timestamp, items by "id",
/// both sorted by time. On duplicate keys `fresh` wins.
Json merge_payloads(const Json& base, const Json& fresh);

/// Merges slices that share (asset, kind, params) and whose ranges overlap or
/// touch. Never claims coverage for a hole between disjoint slices.
std::vector<EvidenceSlice> coalesce_slices(std::vector<EvidenceSlice> slices);

/// Normalizes specialist output into one artifact. All inputs must share
/// asset_id (ValidationError otherwise). Observations: fresh overrides base.
/// invoked_tools: base then fresh. time_range: hull of present ranges.
/// confidence: minimum. The result gets `new_id` and the kind of the first
/// fresh input (or of the first base input when there is no fresh one).
Artifact merge_artifacts(const std::vector<Artifact>& base, const std::vector<Artifact>& fresh,
                         std::string new_id);

} // namespace assetops
