#include "assetops/artifacts/artifact.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace assetops {

namespace {

constexpr std::array<std::pair<Specialist, std::string_view>, 4> kSpecialists{{
    {Specialist::data_collection, "data-collection"},
    {Specialist::time_series, "time-series"},
    {Specialist::failure_reasoning, "failure-reasoning"},
    {Specialist::maintenance_planning, "maintenance-planning"},
}};

constexpr std::array<std::pair<EvidenceKind, std::string_view>, 8> kKinds{{
    {EvidenceKind::sensor_history, "sensor-history"},
    {EvidenceKind::forecast, "forecast"},
    {EvidenceKind::anomaly_scores, "anomaly-scores"},
    {EvidenceKind::work_orders, "work-orders"},
    {EvidenceKind::alerts, "alerts"},
    {EvidenceKind::failure_codes, "failure-codes"},
    {EvidenceKind::maintenance_plan, "maintenance-plan"},
    {EvidenceKind::site_metadata, "site-metadata"},
}};

Json params_json(const ParamMap& p) {
    Json j = Json::object();
    for (const auto& [k, v] : p) j[k] = v;
    return j;
}

ParamMap params_from(const Json& j) {
    ParamMap p;
    if (j.is_object())
        for (auto it = j.begin(); it != j.end(); ++it) p[it.key()] = it.value();
    return p;
}

std::optional<TimeRange> range_from(const Json& j, const char* key) {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    return TimeRange::from_json(j[key]);
}

Json range_json(const std::optional<TimeRange>& r) { return r ? r->to_json() : Json(nullptr); }

Timestamp item_time(const Json& item) {
    return item.is_object() && item.contains("timestamp") ? item["timestamp"].get<Timestamp>() : 0;
}

} // namespace

std::string_view to_string(Specialist s) {
    for (const auto& [k, v] : kSpecialists)
        if (k == s) return v;
    return "unknown";
}

Specialist specialist_from_string(std::string_view s) {
    for (const auto& [k, v] : kSpecialists)
        if (v == s) return k;
    throw ValidationError("unknown specialist '" + std::string(s) + "'");
}

std::string_view to_string(EvidenceKind k) {
    for (const auto& [kind, v] : kKinds)
        if (kind == k) return v;
    return "unknown";
}

EvidenceKind evidence_kind_from_string(std::string_view s) {
    for (const auto& [kind, v] : kKinds)
        if (v == s) return kind;
    throw ValidationError("unknown evidence kind '" + std::string(s) + "'");
}

bool is_range_sliceable(EvidenceKind k) {
    return k == EvidenceKind::sensor_history || k == EvidenceKind::anomaly_scores ||
           k == EvidenceKind::work_orders || k == EvidenceKind::alerts;
}

Json EvidenceRequest::to_json() const {
    return Json{{"asset_id", asset_id},
                {"evidence_kind", to_string(kind)},
                {"time_range", range_json(time_range)},
                {"params", params_json(params)}};
}

EvidenceRequest EvidenceRequest::from_json(const Json& j) {
    EvidenceRequest r;
    r.asset_id = j.at("asset_id").get<std::string>();
    r.kind = evidence_kind_from_string(j.at("evidence_kind").get<std::string>());
    r.time_range = range_from(j, "time_range");
    r.params = params_from(j.value("params", Json::object()));
    return r;
}

Json EvidenceSlice::to_json(bool with_payload) const {
    Json j{{"asset_id", asset_id},
           {"evidence_kind", to_string(kind)},
           {"time_range", range_json(range)},
           {"params", params_json(params)}};
    if (with_payload) j["payload"] = payload;
    else j["payload_chars"] = payload.is_null() ? 0 : payload.dump().size();
    return j;
}

EvidenceSlice EvidenceSlice::from_json(const Json& j) {
    EvidenceSlice s;
    s.asset_id = j.at("asset_id").get<std::string>();
    s.kind = evidence_kind_from_string(j.at("evidence_kind").get<std::string>());
    s.range = range_from(j, "time_range");
    s.params = params_from(j.value("params", Json::object()));
    s.payload = j.value("payload", Json());
    return s;
}

Json Artifact::to_json(bool with_payloads) const {
    Json obs = Json::object();
    for (const auto& [k, v] : observations) obs[k] = v;
    Json sl = Json::array();
    for (const auto& s : slices) sl.push_back(s.to_json(with_payloads));
    return Json{{"artifact_id", artifact_id},
                {"dialog_id", dialog_id},
                {"turn_index", turn_index},
                {"specialist", to_string(specialist)},
                {"asset_id", asset_id},
                {"time_range", range_json(time_range)},
                {"evidence_kind", to_string(evidence_kind)},
                {"invoked_tools", invoked_tools},
                {"observations", obs},
                {"intermediate_results", intermediate_results},
                {"assumptions", assumptions},
                {"confidence", confidence},
                {"slices", sl},
                {"reused_from", reused_from},
                {"reused", reused()}};
}

Artifact Artifact::from_json(const Json& j) {
    Artifact a;
    a.artifact_id = j.at("artifact_id").get<std::string>();
    a.dialog_id = j.at("dialog_id").get<std::string>();
    a.turn_index = j.at("turn_index").get<int>();
    a.specialist = specialist_from_string(j.at("specialist").get<std::string>());
    a.asset_id = j.value("asset_id", "");
    a.time_range = range_from(j, "time_range");
    a.evidence_kind = evidence_kind_from_string(j.at("evidence_kind").get<std::string>());
    a.invoked_tools = j.value("invoked_tools", std::vector<std::string>{});
    for (auto it = j.at("observations").begin(); it != j.at("observations").end(); ++it)
        a.observations[it.key()] = it.value();
    a.intermediate_results = j.value("intermediate_results", Json::object());
    a.assumptions = j.value("assumptions", std::vector<std::string>{});
    a.confidence = j.value("confidence", 1.0);
    for (const auto& s : j.value("slices", Json::array())) a.slices.push_back(EvidenceSlice::from_json(s));
    a.reused_from = j.value("reused_from", std::vector<std::string>{});
    return a;
}

bool slice_matches(const EvidenceSlice& slice, const EvidenceRequest& request) {
    if (slice.asset_id != request.asset_id || slice.kind != request.kind) return false;
    for (const auto& [k, v] : request.params) {
        auto it = slice.params.find(k);
        if (it != slice.params.end() && it->second != v) return false;
    }
    if (!request.time_range) return true;
    if (!slice.range) return false;
    return slice.range->overlaps(*request.time_range);
}

Json clip_payload(const Json& payload, const TimeRange& range) {
    if (!payload.is_object()) return payload;
    Json out = payload;
    if (payload.contains("series") && payload["series"].is_array()) {
        Json s = Json::array();
        for (const auto& p : payload["series"])
            if (range.contains(p.at(0).get<Timestamp>())) s.push_back(p);
        out["series"] = std::move(s);
    }
    if (payload.contains("items") && payload["items"].is_array()) {
        Json s = Json::array();
        for (const auto& it : payload["items"])
            if (!it.contains("timestamp") || range.contains(item_time(it))) s.push_back(it);
        out["items"] = std::move(s);
    }
    return out;
}

Json merge_payloads(const Json& base, const Json& fresh) {
    if (base.is_null()) return fresh;
    if (fresh.is_null()) return base;
    Json out = base;
    for (auto it = fresh.begin(); it != fresh.end(); ++it)
        if (it.key() != "series" && it.key() != "items") out[it.key()] = it.value();
    if (base.contains("series") || fresh.contains("series")) {
        std::map<Timestamp, Json> points;
        for (const auto* src : {&base, &fresh})
            if (src->contains("series"))
                for (const auto& p : (*src)["series"]) points[p.at(0).get<Timestamp>()] = p;
        Json s = Json::array();
        for (auto& [_, p] : points) s.push_back(std::move(p));
        out["series"] = std::move(s);
    }
    if (base.contains("items") || fresh.contains("items")) {
        std::map<std::string, Json> by_id;
        Json anonymous = Json::array();
        for (const auto* src : {&base, &fresh})
            if (src->contains("items"))
                for (const auto& item : (*src)["items"]) {
                    if (item.contains("id")) by_id[item["id"].get<std::string>()] = item;
                    else anonymous.push_back(item);
                }
        std::vector<Json> items;
        for (auto& [_, v] : by_id) items.push_back(std::move(v));
        std::stable_sort(items.begin(), items.end(), [](const Json& a, const Json& b) {
            return item_time(a) < item_time(b);
        });
        Json s = Json::array();
        for (auto& v : items) s.push_back(std::move(v));
        for (auto& v : anonymous) s.push_back(std::move(v));
        out["items"] = std::move(s);
    }
    return out;
}

std::vector<EvidenceSlice> coalesce_slices(std::vector<EvidenceSlice> slices) {
    std::vector<EvidenceSlice> out;
    for (auto& s : slices) {
        bool absorbed = false;
        if (s.range && is_range_sliceable(s.kind)) {
            for (auto& o : out) {
                if (o.asset_id != s.asset_id || o.kind != s.kind || o.params != s.params || !o.range) continue;
                if (o.range->start() > s.range->end() || s.range->start() > o.range->end()) continue;
                o.range = o.range->hull(*s.range);
                o.payload = merge_payloads(o.payload, s.payload);
                absorbed = true;
                break;
            }
        }
        if (!absorbed) out.push_back(std::move(s));
    }
    // A merge can make two earlier slices touch; repeat until stable.
    if (out.size() < slices.size() && out.size() > 1) return coalesce_slices(std::move(out));
    return out;
}

Artifact merge_artifacts(const std::vector<Artifact>& base, const std::vector<Artifact>& fresh,
                         std::string new_id) {
    if (base.empty() && fresh.empty()) throw ValidationError("merge of zero artifacts");
    const Artifact& lead = fresh.empty() ? base.front() : fresh.front();
    Artifact out;
    out.artifact_id = std::move(new_id);
    out.dialog_id = lead.dialog_id;
    out.turn_index = lead.turn_index;
    out.specialist = lead.specialist;
    out.asset_id = lead.asset_id;
    out.evidence_kind = lead.evidence_kind;
    out.intermediate_results = Json::object();
    out.confidence = 1.0;

    std::vector<EvidenceSlice> slices;
    for (const auto* group : {&base, &fresh}) {
        for (const auto& a : *group) {
            if (a.asset_id != out.asset_id)
                throw ValidationError("cannot merge artifacts of assets " + out.asset_id + " and " + a.asset_id);
            for (const auto& [k, v] : a.observations) out.observations[k] = v;
            out.invoked_tools.insert(out.invoked_tools.end(), a.invoked_tools.begin(), a.invoked_tools.end());
            if (a.time_range) out.time_range = out.time_range ? out.time_range->hull(*a.time_range) : *a.time_range;
            out.confidence = std::min(out.confidence, a.confidence);
            for (const auto& s : a.assumptions)
                if (std::find(out.assumptions.begin(), out.assumptions.end(), s) == out.assumptions.end())
                    out.assumptions.push_back(s);
            if (a.intermediate_results.is_object())
                for (auto it = a.intermediate_results.begin(); it != a.intermediate_results.end(); ++it)
                    out.intermediate_results[it.key()] = it.value();
            slices.insert(slices.end(), a.slices.begin(), a.slices.end());
            for (const auto& r : a.reused_from)
                if (std::find(out.reused_from.begin(), out.reused_from.end(), r) == out.reused_from.end())
                    out.reused_from.push_back(r);
        }
    }
    for (const auto& a : base)
        if (!a.artifact_id.empty() &&
            std::find(out.reused_from.begin(), out.reused_from.end(), a.artifact_id) == out.reused_from.end())
            out.reused_from.push_back(a.artifact_id);
    out.slices = coalesce_slices(std::move(slices));
    return out;
}

} // namespace assetops
