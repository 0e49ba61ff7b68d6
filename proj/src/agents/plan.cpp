#include "assetops/agents/plan.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace assetops {

std::string_view to_string(NodeStatus s) {
    switch (s) {
    case NodeStatus::pending: return "pending";
    case NodeStatus::completed: return "completed";
    case NodeStatus::failed: return "failed";
    }
    return "unknown";
}

const PlanNode* PlanState::find(const std::string& id) const {
    for (const auto& n : nodes)
        if (n.subtask.subtask_id == id) return &n;
    return nullptr;
}

PlanNode* PlanState::find(const std::string& id) {
    for (auto& n : nodes)
        if (n.subtask.subtask_id == id) return &n;
    return nullptr;
}

std::size_t PlanState::completed_count() const {
    return static_cast<std::size_t>(
        std::count_if(nodes.begin(), nodes.end(), [](const PlanNode& n) { return n.status == NodeStatus::completed; }));
}

bool PlanState::succeeded() const {
    if (aborted) return false;
    return std::all_of(nodes.begin(), nodes.end(), [](const PlanNode& n) {
        return n.subtask.remedial || n.status == NodeStatus::completed;
    });
}

void PlanState::validate() const {
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (!index.emplace(nodes[i].subtask.subtask_id, i).second)
            throw ValidationError("duplicate subtask id " + nodes[i].subtask.subtask_id);
    std::vector<int> mark(nodes.size(), 0);
    std::function<void(std::size_t)> visit = [&](std::size_t i) {
        if (mark[i] == 2) return;
        if (mark[i] == 1) throw ValidationError("dependency cycle at " + nodes[i].subtask.subtask_id);
        mark[i] = 1;
        for (const auto& d : nodes[i].deps) {
            auto it = index.find(d);
            if (it == index.end()) throw ValidationError("unknown dependency " + d);
            visit(it->second);
        }
        mark[i] = 2;
    };
    for (std::size_t i = 0; i < nodes.size(); ++i) visit(i);
}

Json PlanState::to_json() const {
    Json ns = Json::array();
    for (const auto& n : nodes) {
        Json j = n.subtask.to_json();
        j["deps"] = n.deps;
        j["status"] = to_string(n.status);
        if (!n.artifact_id.empty()) j["artifact_id"] = n.artifact_id;
        if (n.failure != SubtaskFailure::none) j["failure"] = to_string(n.failure);
        if (n.precompleted) j["precompleted"] = true;
        ns.push_back(std::move(j));
    }
    return Json{{"revision", revision}, {"aborted", aborted}, {"nodes", ns}};
}

namespace {

EvidenceRequest req(const std::string& asset, EvidenceKind kind, std::optional<TimeRange> range, ParamMap params = {}) {
    return EvidenceRequest{asset, kind, range, std::move(params)};
}

struct Builder {
    PlanState state;
    std::string asset;
    std::string prefix;
    int counter = 0;

    std::string add(Specialist who, std::string goal, std::vector<EvidenceRequest> reqs,
                     std::vector<std::string> deps) {
        PlanNode n;
        n.subtask.subtask_id = prefix + "s" + std::to_string(++counter);
        n.subtask.specialist = who;
        n.subtask.goal = std::move(goal);
        n.subtask.requests = std::move(reqs);
        n.deps = std::move(deps);
        state.nodes.push_back(std::move(n));
        return state.nodes.back().subtask.subtask_id;
    }
};

void instantiate(Builder& b, const Intent& in, Timestamp window_end) {
    const std::string& a = b.asset;
    const std::optional<TimeRange> r = in.time_range;
    const TimeRange lookback(window_end - 90 * kDayMs, window_end);
    const std::vector<std::string> chs = in.channels.empty() ? default_channels(in.category) : in.channels;
    const std::string& ch = chs.front();
    auto history = [&](const std::string& c) {
        return req(a, EvidenceKind::sensor_history, r, {{"channel", c}});
    };
    auto anomaly = [&](const std::string& c) {
        return req(a, EvidenceKind::anomaly_scores, r, {{"channel", c}});
    };
    auto forecast = [&] {
        return req(a, EvidenceKind::forecast, r, {{"channel", ch}, {"horizon", in.horizon}});
    };
    auto alerts = [&] { return req(a, EvidenceKind::alerts, r); };
    auto orders = [&] { return req(a, EvidenceKind::work_orders, lookback); };
    const std::string goal_suffix = " for " + a;

    switch (in.category) {
    case Category::fault_diagnosis: {
        auto dc = b.add(Specialist::data_collection, "collect " + ch + " history and alerts" + goal_suffix,
                        {history(ch), alerts()}, {});
        auto ts = b.add(Specialist::time_series, "score anomalies on " + ch + goal_suffix, {anomaly(ch)}, {dc});
        b.add(Specialist::failure_reasoning, "link the deviation to failure modes" + goal_suffix, {}, {dc, ts});
        break;
    }
    case Category::predictive_maintenance: {
        auto dc = b.add(Specialist::data_collection, "collect " + ch + " history and alerts" + goal_suffix,
                        {history(ch), alerts()}, {});
        auto ts = b.add(Specialist::time_series, "forecast " + ch + " and score anomalies" + goal_suffix,
                        {forecast(), anomaly(ch)}, {dc});
        b.add(Specialist::failure_reasoning, "assess emerging failure modes" + goal_suffix, {}, {dc, ts});
        break;
    }
    case Category::comparative_analysis: {
        auto dc = b.add(Specialist::data_collection, "collect " + ch + " history" + goal_suffix, {history(ch)}, {});
        b.add(Specialist::time_series, "score anomalies on " + ch + goal_suffix, {anomaly(ch)}, {dc});
        break;
    }
    case Category::maintenance_planning: {
        auto dc = b.add(Specialist::data_collection, "collect work orders and alerts" + goal_suffix,
                        {orders(), alerts()}, {});
        auto ts = b.add(Specialist::time_series, "score anomalies on " + ch + goal_suffix, {anomaly(ch)}, {dc});
        auto fr = b.add(Specialist::failure_reasoning, "identify the failure mode to plan for" + goal_suffix, {},
                        {dc, ts});
        b.add(Specialist::maintenance_planning, "recommend maintenance" + goal_suffix, {orders()}, {fr});
        break;
    }
    case Category::operational_monitoring: {
        std::vector<EvidenceRequest> reqs;
        for (const auto& c : chs) reqs.push_back(history(c));
        reqs.push_back(alerts());
        auto dc = b.add(Specialist::data_collection, "collect operating data" + goal_suffix, reqs, {});
        b.add(Specialist::time_series, "score anomalies on " + ch + goal_suffix, {anomaly(ch)}, {dc});
        break;
    }
    case Category::knowledge_discovery:
        b.add(Specialist::data_collection, "look up site metadata" + goal_suffix,
              {req(a, EvidenceKind::site_metadata, std::nullopt)}, {});
        break;
    case Category::system_configuration:
        b.add(Specialist::data_collection, "look up configuration and " + ch + goal_suffix,
              {req(a, EvidenceKind::site_metadata, std::nullopt), history(ch)}, {});
        break;
    case Category::full_pipeline: {
        auto dc = b.add(Specialist::data_collection, "collect history, alerts and work orders" + goal_suffix,
                        {history(ch), alerts(), orders()}, {});
        auto ts = b.add(Specialist::time_series, "score anomalies and forecast " + ch + goal_suffix,
                        {anomaly(ch), forecast()}, {dc});
        auto fr = b.add(Specialist::failure_reasoning, "diagnose the failure mode" + goal_suffix, {}, {dc, ts});
        b.add(Specialist::maintenance_planning, "recommend maintenance" + goal_suffix, {orders()}, {fr});
        break;
    }
    }
}

} // namespace

PlanState plan_template(const Intent& intent, Timestamp window_end) {
    PlanState out;
    if (intent.needs_clarification) return out;
    const bool multi = intent.asset_ids.size() > 1;
    for (const auto& asset : intent.asset_ids) {
        Builder b;
        b.asset = asset;
        b.prefix = multi ? asset + "/" : "";
        instantiate(b, intent, window_end);
        for (auto& n : b.state.nodes) out.nodes.push_back(std::move(n));
    }
    out.validate();
    return out;
}

PlanState plan_turn(const Intent& intent, const ArtifactStore& store, Timestamp window_end) {
    PlanState out = plan_template(intent, window_end);
    for (auto& n : out.nodes) {
        if (n.subtask.requests.empty()) continue;
        if (n.subtask.specialist != Specialist::data_collection && n.subtask.specialist != Specialist::time_series)
            continue;
        n.coverable = std::all_of(n.subtask.requests.begin(), n.subtask.requests.end(),
                                  [&](const EvidenceRequest& r) { return store.find_covering(r).fully_covered(); });
    }
    return out;
}

std::optional<std::size_t> route_next(const PlanState& state) {
    for (std::size_t i = 0; i < state.nodes.size(); ++i) {
        const PlanNode& n = state.nodes[i];
        if (n.status != NodeStatus::pending) continue;
        const bool ready = std::all_of(n.deps.begin(), n.deps.end(), [&](const std::string& d) {
            const PlanNode* dep = state.find(d);
            return dep && dep->status == NodeStatus::completed;
        });
        if (ready) return i;
    }
    return std::nullopt;
}

std::vector<std::string> dependency_artifacts(const PlanState& state, const PlanNode& node) {
    std::vector<std::string> out;
    for (const auto& d : node.deps)
        if (const PlanNode* dep = state.find(d); dep && dep->status == NodeStatus::completed && !dep->artifact_id.empty())
            out.push_back(dep->artifact_id);
    return out;
}

bool replan(PlanState& state, std::size_t index, const SpecialistResult& result, Timestamp fleet_start) {
    if (index >= state.nodes.size()) throw ValidationError("replan on unknown node");
    PlanNode& node = state.nodes[index];
    if (result.ok()) {
        node.status = NodeStatus::completed;
        node.artifact_id = result.artifact_id;
        node.failure = SubtaskFailure::none;
        node.failure_detail.clear();
        return false;
    }
    node.failure = result.failure;
    node.failure_detail = result.failure_detail;
    if (result.failure != SubtaskFailure::insufficient_evidence) {
        node.status = NodeStatus::failed;
        return false;
    }
    if (state.revision >= kMaxPlanRevisions) {
        node.status = NodeStatus::failed;
        state.aborted = true;
        return false;
    }

    // Widest alert window already feeding the node, doubled backwards.
    std::optional<TimeRange> widest;
    std::string asset;
    for (const auto& d : node.deps) {
        const PlanNode* dep = state.find(d);
        if (!dep) continue;
        for (const auto& r : dep->subtask.requests) {
            if (asset.empty()) asset = r.asset_id;
            if (r.kind == EvidenceKind::alerts && r.time_range && (!widest || r.time_range->length() > widest->length()))
                widest = r.time_range;
            if (!widest && r.time_range) widest = r.time_range;
        }
    }
    if (asset.empty() || !widest) {
        node.status = NodeStatus::failed;
        return false;
    }
    const Timestamp end = widest->end();
    const Timestamp start = std::max(fleet_start, end - 2 * widest->length());
    ++state.revision;
    PlanNode rem;
    rem.subtask.subtask_id = node.subtask.subtask_id + "-r" + std::to_string(state.revision);
    rem.subtask.specialist = Specialist::data_collection;
    rem.subtask.goal = "widen the alert window for " + asset;
    rem.subtask.requests = {EvidenceRequest{asset, EvidenceKind::alerts, TimeRange(start, end), {}}};
    rem.subtask.remedial = true;
    node.deps.push_back(rem.subtask.subtask_id);
    node.status = NodeStatus::pending;
    state.nodes.insert(state.nodes.begin() + static_cast<std::ptrdiff_t>(index), std::move(rem));
    return true;
}

} // namespace assetops
