#include "assetops/agents/specialists.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace assetops {

Json Subtask::to_json() const {
    Json reqs = Json::array();
    for (const auto& r : requests) reqs.push_back(r.to_json());
    return Json{{"subtask_id", subtask_id}, {"specialist", to_string(specialist)}, {"goal", goal},
                {"requests", reqs},        {"inputs", inputs},                    {"remedial", remedial}};
}

Subtask Subtask::from_json(const Json& j) {
    Subtask s;
    s.subtask_id = j.at("subtask_id").get<std::string>();
    s.specialist = specialist_from_string(j.at("specialist").get<std::string>());
    s.goal = j.value("goal", "");
    for (const auto& r : j.value("requests", Json::array())) s.requests.push_back(EvidenceRequest::from_json(r));
    s.inputs = j.value("inputs", std::vector<std::string>{});
    s.remedial = j.value("remedial", false);
    return s;
}

std::string_view to_string(SubtaskFailure f) {
    switch (f) {
    case SubtaskFailure::none: return "none";
    case SubtaskFailure::insufficient_evidence: return "insufficient evidence";
    case SubtaskFailure::tool_failure: return "tool failure";
    case SubtaskFailure::missing_input: return "missing input";
    }
    return "unknown";
}

double failure_confidence(int evidence_count) {
    return std::min(0.95, 0.5 + 0.1 * static_cast<double>(std::max(0, evidence_count)));
}

ToolCall call_for_request(const EvidenceRequest& r) {
    ToolCall c;
    Json args{{"asset_id", r.asset_id}};
    auto range_args = [&] {
        if (!r.time_range) throw ValidationError(std::string(to_string(r.kind)) + " request needs a time range");
        args["start"] = r.time_range->start();
        args["end"] = r.time_range->end();
    };
    auto param = [&](const char* k) {
        auto it = r.params.find(k);
        if (it == r.params.end()) throw ValidationError(std::string(to_string(r.kind)) + " request needs " + k);
        args[k] = it->second;
    };
    switch (r.kind) {
    case EvidenceKind::sensor_history:
        c.server = "iot", c.tool = "get_sensor_history";
        param("channel");
        range_args();
        break;
    case EvidenceKind::alerts:
        c.server = "events", c.tool = "query_alerts";
        range_args();
        if (r.params.count("min_severity")) param("min_severity");
        break;
    case EvidenceKind::work_orders:
        c.server = "workorder", c.tool = "query";
        range_args();
        break;
    case EvidenceKind::site_metadata:
        c.server = "utilities", c.tool = "site_metadata";
        break;
    case EvidenceKind::forecast:
        c.server = "tsfm", c.tool = "forecast";
        param("channel");
        param("horizon");
        range_args();
        break;
    case EvidenceKind::anomaly_scores:
        c.server = "tsfm", c.tool = "anomaly_scores";
        param("channel");
        range_args();
        break;
    case EvidenceKind::failure_codes:
        c.server = "fmsr", c.tool = "map_failure_codes";
        args = Json::object();
        param("codes");
        break;
    case EvidenceKind::maintenance_plan:
        throw ValidationError("maintenance plans are derived, not fetched");
    }
    c.args = std::move(args);
    return c;
}

namespace {

struct Gathered {
    std::vector<Artifact> base_views;
    Artifact fresh;
    std::vector<CallOutcome> calls;
    std::vector<Json> payloads;
    bool failed = false;
    std::string detail;
    DurationMs wall = 0;
};

/// Reuse-or-fetch for a list of requests. Gap calls form one batch.
Gathered gather(const std::vector<EvidenceRequest>& requests, Specialist who, SpecialistContext& ctx) {
    Gathered g;
    std::map<std::string, std::size_t> view_of;
    std::vector<EvidenceRequest> gaps;
    for (const auto& req : requests) {
        const CoverageDecision d = ctx.store->find_covering(req);
        for (std::size_t i = 0; i < d.covered.size(); ++i) {
            const std::string& src = d.covered_from[i];
            auto it = view_of.find(src);
            if (it == view_of.end()) {
                const Artifact* a = ctx.store->get(src);
                Artifact v;
                v.artifact_id = src;
                v.dialog_id = a->dialog_id;
                v.turn_index = a->turn_index;
                v.specialist = a->specialist;
                v.asset_id = a->asset_id;
                v.evidence_kind = a->evidence_kind;
                v.confidence = a->confidence;
                v.assumptions = a->assumptions;
                it = view_of.emplace(src, g.base_views.size()).first;
                g.base_views.push_back(std::move(v));
            }
            Artifact& v = g.base_views[it->second];
            if (d.covered[i].range) v.time_range = v.time_range ? v.time_range->hull(*d.covered[i].range) : *d.covered[i].range;
            v.slices.push_back(d.covered[i]);
        }
        gaps.insert(gaps.end(), d.gaps.begin(), d.gaps.end());
    }

    g.fresh.dialog_id = ctx.dialog_id;
    g.fresh.turn_index = ctx.turn_index;
    g.fresh.specialist = who;
    g.fresh.asset_id = requests.empty() ? std::string() : requests.front().asset_id;
    g.fresh.evidence_kind = requests.empty() ? EvidenceKind::sensor_history : requests.front().kind;
    g.fresh.confidence = 1.0;
    if (gaps.empty()) return g;

    ExecutionBatch batch;
    batch.mode = ctx.mode;
    for (const auto& gap : gaps) {
        ToolCall c = call_for_request(gap);
        c.call_id = ctx.next_call_id();
        c.dialog_id = ctx.dialog_id;
        c.turn_index = ctx.turn_index;
        if (ctx.mutate_call) ctx.mutate_call(c);
        batch.calls.push_back(std::move(c));
    }
    BatchResult res = execute_batch(batch, ctx.policy, ctx.exec);
    g.wall = res.wall_ms;
    for (std::size_t i = 0; i < res.outcomes.size(); ++i) {
        CallOutcome& o = res.outcomes[i];
        for (const auto& a : o.attempts) ctx.store->register_call(a.call_id);
        if (o.ok()) {
            g.fresh.invoked_tools.push_back(o.final_call().call_id);
            EvidenceSlice s{gaps[i].asset_id, gaps[i].kind, gaps[i].time_range, gaps[i].params, o.result.payload};
            if (s.range) g.fresh.time_range = g.fresh.time_range ? g.fresh.time_range->hull(*s.range) : *s.range;
            g.fresh.slices.push_back(std::move(s));
            g.payloads.push_back(o.result.payload);
        } else {
            if (o.final_call().status == ToolStatus::execution_failure || o.final_call().status == ToolStatus::timeout)
                g.fresh.invoked_tools.push_back(o.final_call().call_id);
            g.failed = true;
            const auto& fc = o.final_call();
            g.detail = fc.qualified_name() + " " + std::string(to_string(fc.status)) +
                       (fc.error_detail ? ": " + *fc.error_detail : std::string());
        }
    }
    g.calls = std::move(res.outcomes);
    return g;
}

/// Payloads of all slices sharing (kind, params), stitched together.
struct Grouped {
    EvidenceKind kind;
    ParamMap params;
    Json payload;
};

std::vector<Grouped> group_slices(const std::vector<EvidenceSlice>& slices) {
    std::vector<Grouped> out;
    for (const auto& s : slices) {
        auto it = std::find_if(out.begin(), out.end(),
                               [&](const Grouped& g) { return g.kind == s.kind && g.params == s.params; });
        if (it == out.end()) out.push_back({s.kind, s.params, s.payload});
        else it->payload = merge_payloads(it->payload, s.payload);
    }
    return out;
}

std::string param_str(const ParamMap& p, const char* k) {
    auto it = p.find(k);
    if (it == p.end()) return "";
    return it->second.is_string() ? it->second.get<std::string>() : it->second.dump();
}

void observe(Artifact& a) {
    a.observations.clear();
    for (const auto& g : group_slices(a.slices)) {
        const std::string ch = param_str(g.params, "channel");
        switch (g.kind) {
        case EvidenceKind::sensor_history: {
            const Json& s = g.payload.value("series", Json::array());
            a.observations[ch + ".points"] = s.size();
            if (s.empty()) break;
            double sum = 0, mx = -1e300, mn = 1e300;
            Timestamp at = 0;
            for (const auto& p : s) {
                const double v = p[1].get<double>();
                sum += v;
                if (v > mx) mx = v, at = p[0].get<Timestamp>();
                mn = std::min(mn, v);
            }
            a.observations[ch + ".mean"] = std::round(sum / static_cast<double>(s.size()) * 1000.0) / 1000.0;
            a.observations[ch + ".max"] = mx;
            a.observations[ch + ".max_at"] = format_timestamp(at);
            a.observations[ch + ".min"] = mn;
            a.observations[ch + ".latest"] = s.back()[1];
            break;
        }
        case EvidenceKind::anomaly_scores: {
            const Json& s = g.payload.value("series", Json::array());
            double mx = 0;
            Timestamp at = 0;
            int above = 0;
            for (const auto& p : s) {
                const double v = p[1].get<double>();
                if (v > mx) mx = v, at = p[0].get<Timestamp>();
                if (v >= kAnomalyThreshold) ++above;
            }
            a.observations["anomaly." + ch + ".max_score"] = mx;
            if (!s.empty()) a.observations["anomaly." + ch + ".max_score_at"] = format_timestamp(at);
            a.observations["anomaly." + ch + ".points_above_threshold"] = above;
            break;
        }
        case EvidenceKind::forecast: {
            const Json& s = g.payload.value("series", Json::array());
            a.observations["forecast." + ch + ".horizon"] = s.size();
            if (!s.empty()) {
                a.observations["forecast." + ch + ".first"] = s.front()[1];
                a.observations["forecast." + ch + ".last"] = s.back()[1];
                a.observations["forecast." + ch + ".end_at"] = format_timestamp(s.back()[0].get<Timestamp>());
            }
            break;
        }
        case EvidenceKind::alerts: {
            const Json& items = g.payload.value("items", Json::array());
            int high = 0, coded = 0;
            for (const auto& i : items) {
                if (i.value("severity", "") == "high") ++high;
                if (i.contains("failure_code")) ++coded;
            }
            a.observations["alerts.count"] = items.size();
            a.observations["alerts.high"] = high;
            a.observations["alerts.coded"] = coded;
            break;
        }
        case EvidenceKind::work_orders: {
            const Json& items = g.payload.value("items", Json::array());
            int corrective = 0;
            for (const auto& i : items)
                if (i.value("failure_code", "") != "PM") ++corrective;
            a.observations["work_orders.count"] = items.size();
            a.observations["work_orders.corrective"] = corrective;
            if (!items.empty()) a.observations["work_orders.latest"] = items.back().value("id", "");
            break;
        }
        case EvidenceKind::site_metadata:
            for (const char* k : {"site", "model", "capacity_tons", "refrigerant", "install_year"})
                if (g.payload.contains(k)) a.observations[k] = g.payload[k];
            break;
        case EvidenceKind::failure_codes: {
            const Json& items = g.payload.value("items", Json::array());
            a.observations["codes.count"] = items.size();
            break;
        }
        case EvidenceKind::maintenance_plan: break;
        }
    }
}

SpecialistResult finish_evidence(const Subtask& st, Gathered g, SpecialistContext& ctx,
                                 std::vector<std::string> assumptions) {
    SpecialistResult r;
    r.calls = std::move(g.calls);
    r.fresh_payloads = std::move(g.payloads);
    r.batch_wall_ms = g.wall;
    if (g.failed) {
        r.failure = SubtaskFailure::tool_failure;
        r.failure_detail = g.detail;
        return r;
    }
    std::vector<Artifact> fresh;
    if (!g.fresh.slices.empty() || g.base_views.empty()) fresh.push_back(std::move(g.fresh));
    Artifact a = merge_artifacts(g.base_views, fresh, ctx.store->next_id());
    a.dialog_id = ctx.dialog_id;
    a.turn_index = ctx.turn_index;
    a.specialist = st.specialist;
    a.evidence_kind = st.requests.front().kind;
    a.asset_id = st.requests.front().asset_id;
    a.time_range.reset();
    for (const auto& req : st.requests)
        if (req.time_range) a.time_range = a.time_range ? a.time_range->hull(*req.time_range) : *req.time_range;
    a.assumptions = std::move(assumptions);
    observe(a);
    r.artifact_id = ctx.store->put(std::move(a));
    return r;
}

bool check_requests(const Subtask& st, std::initializer_list<EvidenceKind> allowed, SpecialistResult& r) {
    if (st.requests.empty()) {
        r.failure = SubtaskFailure::missing_input;
        r.failure_detail = "subtask has no evidence requests";
        return false;
    }
    for (const auto& req : st.requests) {
        if (std::find(allowed.begin(), allowed.end(), req.kind) == allowed.end())
            throw ValidationError(std::string(to_string(st.specialist)) + " cannot serve " +
                                  std::string(to_string(req.kind)) + " requests");
        if (req.asset_id != st.requests.front().asset_id)
            throw ValidationError("one subtask serves one asset");
    }
    return true;
}

std::vector<const Artifact*> inputs_of(const Subtask& st, const SpecialistContext& ctx) {
    std::vector<const Artifact*> out;
    for (const auto& id : st.inputs)
        if (const Artifact* a = ctx.store->get(id)) out.push_back(a);
    return out;
}

} // namespace

SpecialistResult run_data_collection(const Subtask& st, SpecialistContext& ctx) {
    SpecialistResult r;
    if (!check_requests(st, {EvidenceKind::sensor_history, EvidenceKind::work_orders, EvidenceKind::alerts,
                             EvidenceKind::site_metadata},
                        r))
        return r;
    return finish_evidence(st, gather(st.requests, st.specialist, ctx), ctx,
                           {"sensor values are hourly samples", "alerts and work orders are as recorded by site systems"});
}

SpecialistResult run_time_series(const Subtask& st, SpecialistContext& ctx) {
    SpecialistResult r;
    if (!check_requests(st, {EvidenceKind::forecast, EvidenceKind::anomaly_scores}, r)) return r;
    SpecialistResult out = finish_evidence(
        st, gather(st.requests, st.specialist, ctx), ctx,
        {"anomaly scores are |z| / 6 against the channel's normal operating statistics",
         "forecasts extrapolate the mean trend of the history window"});
    return out;
}

SpecialistResult run_failure_reasoning(const Subtask& st, SpecialistContext& ctx) {
    SpecialistResult r;
    const auto inputs = inputs_of(st, ctx);
    std::vector<EvidenceSlice> scores, alerts, orders;
    for (const auto* a : inputs)
        for (const auto& s : a->slices) {
            if (s.kind == EvidenceKind::anomaly_scores) scores.push_back(s);
            else if (s.kind == EvidenceKind::alerts) alerts.push_back(s);
            else if (s.kind == EvidenceKind::work_orders) orders.push_back(s);
        }
    if (scores.empty() && alerts.empty()) {
        r.failure = SubtaskFailure::missing_input;
        r.failure_detail = "failure reasoning needs anomaly scores or alerts";
        return r;
    }
    const std::string asset = inputs.front()->asset_id;

    // Anomalous window: span of above-threshold scores, else the alert span.
    std::optional<TimeRange> window;
    int abnormal_points = 0;
    for (const auto& s : scores)
        for (const auto& p : s.payload.value("series", Json::array()))
            if (p[1].get<double>() >= kAnomalyThreshold) {
                ++abnormal_points;
                const Timestamp t = p[0].get<Timestamp>();
                const TimeRange pt(t, t + kHourMs);
                window = window ? window->hull(pt) : pt;
            }
    const bool anomalous = window.has_value();
    if (!window) {
        for (const auto& s : alerts)
            if (s.range) window = window ? window->hull(*s.range) : *s.range;
    }
    if (!window) {
        r.failure = SubtaskFailure::insufficient_evidence;
        r.failure_detail = "no anomalous window and no alert coverage";
        return r;
    }
    // Alerts may lead or trail the deviation by up to a day.
    const TimeRange search(window->start() - (anomalous ? kDayMs : 0), window->end() + (anomalous ? kDayMs : 0));

    struct Candidate {
        std::string code;
        int corroborating = 0;
        Timestamp latest = 0;
    };
    std::map<std::string, Candidate> cands;
    std::set<std::string> seen_ids;
    bool tight = true;
    auto consider = [&](const Json& item) {
        const std::string code = item.value("failure_code", "");
        if (code.empty() || code == "PM") return;
        const Timestamp t = item.value("timestamp", Timestamp{0});
        if (tight && !search.contains(t)) return;
        if (!seen_ids.insert(item.value("id", "")).second) return;
        auto& c = cands[code];
        c.code = code;
        ++c.corroborating;
        c.latest = std::max(c.latest, t);
    };
    for (const auto& s : alerts)
        for (const auto& it : s.payload.value("items", Json::array())) consider(it);
    for (const auto& s : orders)
        for (const auto& it : s.payload.value("items", Json::array())) consider(it);
    if (cands.empty() && anomalous) {
        // Nothing near the deviation: fall back to every record supplied.
        tight = false;
        seen_ids.clear();
        for (const auto& s : alerts)
            for (const auto& it : s.payload.value("items", Json::array())) consider(it);
    }

    if (cands.empty()) {
        r.failure = SubtaskFailure::insufficient_evidence;
        r.failure_detail = "no failure codes corroborated in " + format_timestamp(search.start()) + " .. " +
                           format_timestamp(search.end());
        return r;
    }
    std::vector<Candidate> ranked;
    for (auto& [_, c] : cands) ranked.push_back(c);
    std::sort(ranked.begin(), ranked.end(), [](const Candidate& a, const Candidate& b) {
        if (a.corroborating != b.corroborating) return a.corroborating > b.corroborating;
        if (a.latest != b.latest) return a.latest > b.latest;
        return a.code < b.code;
    });

    std::string codes;
    for (const auto& c : ranked) codes += (codes.empty() ? "" : ",") + c.code;
    EvidenceRequest lookup{asset, EvidenceKind::failure_codes, std::nullopt, {{"codes", codes}}};
    Gathered g = gather({lookup}, st.specialist, ctx);
    r.calls = g.calls;
    r.fresh_payloads = g.payloads;
    r.batch_wall_ms = g.wall;
    if (g.failed) {
        r.failure = SubtaskFailure::tool_failure;
        r.failure_detail = g.detail;
        return r;
    }
    std::vector<Artifact> fresh;
    if (!g.fresh.slices.empty()) fresh.push_back(g.fresh);
    Artifact a = merge_artifacts(g.base_views, fresh, ctx.store->next_id());

    std::map<std::string, Json> described;
    for (const auto& s : a.slices)
        for (const auto& it : s.payload.value("items", Json::array())) described[it.value("code", "")] = it;

    Json ranked_json = Json::array();
    for (const auto& c : ranked) {
        const Json& d = described.count(c.code) ? described[c.code] : Json::object();
        ranked_json.push_back({{"code", c.code},
                               {"corroborating", c.corroborating},
                               {"latest", format_timestamp(c.latest)},
                               {"description", d.value("description", "")},
                               {"recommended_action", d.value("recommended_action", "")}});
    }
    const int evidence = ranked.front().corroborating + (anomalous ? 1 : 0);
    a.dialog_id = ctx.dialog_id;
    a.turn_index = ctx.turn_index;
    a.specialist = Specialist::failure_reasoning;
    a.asset_id = asset;
    a.evidence_kind = EvidenceKind::failure_codes;
    a.time_range = *window;
    a.confidence = failure_confidence(evidence);
    a.observations.clear();
    a.observations["top_code"] = ranked.front().code;
    a.observations["top_description"] = ranked_json[0]["description"];
    a.observations["top_action"] = ranked_json[0]["recommended_action"];
    a.observations["candidate_count"] = ranked.size();
    a.observations["corroborating"] = ranked.front().corroborating;
    a.observations["abnormal_points"] = abnormal_points;
    a.observations["window_start"] = format_timestamp(window->start());
    a.observations["window_end"] = format_timestamp(window->end());
    a.intermediate_results = Json{{"ranked", ranked_json}, {"inputs", st.inputs}, {"evidence_count", evidence}};
    a.assumptions = {"codes named by alerts or corrective work orders within a day of the deviation are candidates"};
    if (!anomalous) a.assumptions.push_back("no above-threshold anomaly score; candidates taken from the alert window");
    if (!tight) a.assumptions.push_back("no coded record near the deviation; candidates taken from all supplied alerts");
    r.artifact_id = ctx.store->put(std::move(a));
    return r;
}

SpecialistResult run_maintenance_planning(const Subtask& st, SpecialistContext& ctx) {
    SpecialistResult r;
    const Artifact* best = nullptr;
    for (const auto* a : inputs_of(st, ctx))
        if (a->evidence_kind == EvidenceKind::failure_codes && a->observations.count("top_code"))
            if (!best || a->confidence > best->confidence) best = a;
    if (!best) {
        r.failure = SubtaskFailure::missing_input;
        r.failure_detail = "maintenance planning needs a failure-code diagnosis";
        return r;
    }
    const std::string asset = best->asset_id;
    std::vector<EvidenceRequest> reqs = st.requests;
    if (reqs.empty()) throw ValidationError("maintenance planning needs a work-order history request");
    for (const auto& q : reqs)
        if (q.kind != EvidenceKind::work_orders) throw ValidationError("maintenance planning fetches work orders only");

    Gathered g = gather(reqs, st.specialist, ctx);
    r.calls = g.calls;
    r.fresh_payloads = g.payloads;
    r.batch_wall_ms = g.wall;
    if (g.failed) {
        r.failure = SubtaskFailure::tool_failure;
        r.failure_detail = g.detail;
        return r;
    }
    std::vector<Artifact> fresh;
    if (!g.fresh.slices.empty()) fresh.push_back(g.fresh);
    Artifact a = merge_artifacts(g.base_views, fresh, ctx.store->next_id());

    const std::string code = best->observations.at("top_code").get<std::string>();
    Json prior;
    for (const auto& s : a.slices)
        for (const auto& wo : s.payload.value("items", Json::array())) {
            const bool same = wo.value("failure_code", "") == code;
            const bool prior_same = !prior.is_null() && prior.value("failure_code", "") == code;
            if (prior.is_null() || (same && !prior_same) ||
                (same == prior_same && wo.value("timestamp", Timestamp{0}) > prior.value("timestamp", Timestamp{0})))
                prior = wo;
        }

    a.dialog_id = ctx.dialog_id;
    a.turn_index = ctx.turn_index;
    a.specialist = Specialist::maintenance_planning;
    a.asset_id = asset;
    a.evidence_kind = EvidenceKind::maintenance_plan;
    a.time_range.reset();
    for (const auto& q : reqs)
        if (q.time_range) a.time_range = a.time_range ? a.time_range->hull(*q.time_range) : *q.time_range;
    a.confidence = best->confidence;
    a.observations.clear();
    a.observations["failure_code"] = code;
    a.observations["recommended_action"] = best->observations.at("top_action");
    a.observations["diagnosis"] = best->observations.at("top_description");
    if (prior.is_null()) {
        a.observations["prior_work_order"] = "none";
    } else {
        a.observations["prior_work_order"] = prior.value("id", "");
        a.observations["prior_work_order_date"] = format_timestamp(prior.value("timestamp", Timestamp{0}));
        a.observations["prior_work_order_action"] = prior.value("action", "");
    }
    a.intermediate_results = Json{{"source_diagnosis", best->artifact_id}, {"inputs", st.inputs}};
    a.assumptions = {"recommended action is the failure-code catalog entry for the top-ranked code"};
    if (prior.is_null()) a.assumptions.push_back("no work orders on record in the last 90 days");
    r.artifact_id = ctx.store->put(std::move(a));
    return r;
}

SpecialistResult run_specialist(const Subtask& st, SpecialistContext& ctx) {
    if (!ctx.store || !ctx.next_call_id) throw ValidationError("specialist context incomplete");
    switch (st.specialist) {
    case Specialist::data_collection: return run_data_collection(st, ctx);
    case Specialist::time_series: return run_time_series(st, ctx);
    case Specialist::failure_reasoning: return run_failure_reasoning(st, ctx);
    case Specialist::maintenance_planning: return run_maintenance_planning(st, ctx);
    }
    throw ValidationError("unknown specialist");
}

std::string summarize_artifact(const Artifact& a) {
    std::string s = std::string(to_string(a.evidence_kind)) + " " + a.asset_id;
    if (a.time_range)
        s += " " + format_timestamp(a.time_range->start()) + " .. " + format_timestamp(a.time_range->end());
    s += a.reused() ? (a.invoked_tools.empty() ? " [reused]" : " [partly reused]") : " [fetched]";
    std::string obs;
    int n = 0;
    for (const auto& [k, v] : a.observations) {
        if (++n > 8) break;
        obs += (obs.empty() ? "" : ", ") + k + "=" + (v.is_string() ? v.get<std::string>() : v.dump());
    }
    if (!obs.empty()) s += ": " + obs;
    return s;
}

} // namespace assetops
