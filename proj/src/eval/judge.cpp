#include "assetops/eval/judge.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <regex>
#include <set>

#include "assetops/sim/servers.hpp"

namespace assetops {

namespace {

std::vector<std::string> assets_named(const std::vector<std::string>& turns) {
    static const std::regex re("[Cc][Hh]-?\\s?(\\d{1,3})");
    std::vector<std::string> out;
    for (const auto& text : turns)
        for (auto it = std::sregex_iterator(text.begin(), text.end(), re); it != std::sregex_iterator(); ++it) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "CH-%02d", std::stoi((*it)[1].str()));
            if (std::find(out.begin(), out.end(), buf) == out.end()) out.emplace_back(buf);
        }
    return out;
}

bool diagnoses(Category c) {
    return c == Category::fault_diagnosis || c == Category::predictive_maintenance ||
           c == Category::maintenance_planning || c == Category::full_pipeline;
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

} // namespace

const std::vector<std::string>& reference_trajectory(Category c) {
    static const std::string hist = "iot.get_sensor_history", alerts = "events.query_alerts",
                             wo = "workorder.query", meta = "utilities.site_metadata", fc = "tsfm.forecast",
                             an = "tsfm.anomaly_scores", codes = "fmsr.map_failure_codes";
    static const std::map<Category, std::vector<std::string>> table{
        {Category::fault_diagnosis, {hist, alerts, an, codes}},
        {Category::predictive_maintenance, {hist, alerts, fc, an, codes}},
        {Category::comparative_analysis, {hist, an}},
        {Category::maintenance_planning, {wo, alerts, an, codes}},
        {Category::operational_monitoring, {hist, alerts, an}},
        {Category::knowledge_discovery, {meta}},
        {Category::system_configuration, {meta, hist}},
        {Category::full_pipeline, {hist, alerts, wo, an, fc, codes}},
    };
    return table.at(c);
}

const std::vector<std::string>& reference_evidence(Category c) {
    static const std::map<Category, std::vector<std::string>> table{
        {Category::fault_diagnosis, {"sensor-history", "alerts", "anomaly-scores", "failure-codes"}},
        {Category::predictive_maintenance, {"sensor-history", "alerts", "forecast", "anomaly-scores", "failure-codes"}},
        {Category::comparative_analysis, {"sensor-history", "anomaly-scores"}},
        {Category::maintenance_planning, {"work-orders", "alerts", "anomaly-scores", "failure-codes", "maintenance-plan"}},
        {Category::operational_monitoring, {"sensor-history", "alerts", "anomaly-scores"}},
        {Category::knowledge_discovery, {"site-metadata"}},
        {Category::system_configuration, {"site-metadata", "sensor-history"}},
        {Category::full_pipeline,
         {"sensor-history", "alerts", "work-orders", "anomaly-scores", "forecast", "failure-codes", "maintenance-plan"}},
    };
    return table.at(c);
}

void GroundTruth::validate(const sim::SyntheticFleet* fleet) const {
    if (dialog_id.empty()) throw ValidationError("ground truth without dialog id");
    if (assets.empty()) throw ValidationError("ground truth " + dialog_id + " names no assets");
    if (fleet)
        for (const auto& a : assets)
            if (!fleet->asset(a)) throw ValidationError("ground truth " + dialog_id + " names unknown asset " + a);
    static const std::set<std::string> known_tools = [] {
        std::set<std::string> s;
        for (const auto& schema : sim::simulated_tool_schemas()) s.insert(schema.server + "." + schema.tool);
        return s;
    }();
    for (const auto& t : trajectory)
        if (!known_tools.count(t)) throw ValidationError("ground truth " + dialog_id + " names unknown tool " + t);
}

Json GroundTruth::to_json() const {
    return Json{{"dialog_id", dialog_id},
                {"category", to_string(category)},
                {"assets", assets},
                {"target_evidence", target_evidence},
                {"trajectory", trajectory},
                {"target_failure_codes", target_failure_codes}};
}

GroundTruth GroundTruth::from_json(const Json& j) {
    GroundTruth g;
    g.dialog_id = j.at("dialog_id").get<std::string>();
    g.category = category_from_string(j.at("category").get<std::string>());
    g.assets = j.at("assets").get<std::vector<std::string>>();
    g.target_evidence = j.value("target_evidence", std::vector<std::string>{});
    g.trajectory = j.value("trajectory", std::vector<std::string>{});
    g.target_failure_codes = j.value("target_failure_codes", std::vector<std::string>{});
    g.validate();
    return g;
}

Json ground_truth_to_json(const GroundTruthSet& set) {
    Json arr = Json::array();
    for (const auto& [id, g] : set) arr.push_back(g.to_json());
    return Json{{"ground_truth", arr}};
}

GroundTruthSet ground_truth_from_json(const Json& j) {
    GroundTruthSet out;
    try {
        for (const auto& g : j.at("ground_truth")) {
            GroundTruth t = GroundTruth::from_json(g);
            const std::string id = t.dialog_id;
            if (!out.emplace(id, std::move(t)).second) throw ValidationError("duplicate ground truth for " + id);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed ground truth: ") + e.what());
    }
    return out;
}

GroundTruthSet load_ground_truth(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw NotFoundError("cannot open ground truth " + path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what(), 0);
    }
    return ground_truth_from_json(j);
}

GroundTruthSet derive_ground_truth(const BenchmarkSuite& suite, const sim::SyntheticFleet& fleet) {
    GroundTruthSet out;
    const Timestamp recent_start = fleet.window.end() - 7 * kDayMs;
    for (const auto& d : suite.dialogs) {
        GroundTruth g;
        g.dialog_id = d.dialog_id;
        g.category = d.category;
        g.assets = assets_named(d.turns);
        g.trajectory = reference_trajectory(d.category);
        g.target_evidence = reference_evidence(d.category);
        if (diagnoses(d.category) && !g.assets.empty()) {
            // The dialog's primary asset is the first one named.
            const sim::AnomalyWindow* latest = nullptr;
            for (const auto& w : fleet.anomalies)
                if (w.asset_id == g.assets.front() && w.range.end() > recent_start &&
                    (!latest || w.range.end() > latest->range.end()))
                    latest = &w;
            if (latest && !latest->failure_code.empty()) g.target_failure_codes.push_back(latest->failure_code);
        }
        g.validate(&fleet);
        out.emplace(g.dialog_id, std::move(g));
    }
    return out;
}

Json JudgeScores::to_json() const {
    return Json{{"planning_effectiveness", planning},
                {"tool_usage_quality", tool_quality},
                {"task_completion", completion}};
}

double quantize_score(double v) { return std::clamp(std::round(v * 20.0) / 20.0, 0.0, 1.0); }

std::size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        for (std::size_t j = 1; j <= b.size(); ++j)
            cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

JudgeScores ScriptedJudge::score(const StandardizedDialog& dialog, const GroundTruth& truth) {
    if (dialog.turns.empty()) throw ValidationError("dialog " + dialog.dialog_id + " has no turns");
    JudgeScores s;

    // Planning: first-occurrence order of tools named in the first turn.
    std::vector<std::string> observed;
    for (const auto& c : dialog.turns.front().tool_calls) {
        const std::string q = c.qualified_name();
        if (std::find(observed.begin(), observed.end(), q) == observed.end()) observed.push_back(q);
    }
    const std::size_t longest = std::max(observed.size(), truth.trajectory.size());
    s.planning = longest == 0 ? 1.0 : static_cast<double>(lcs_length(truth.trajectory, observed)) / longest;

    // Tool quality.
    std::size_t total = 0, valid = 0, compliant = 0, ok = 0, redundant = 0;
    std::set<std::string> seen;
    for (const auto& t : dialog.turns)
        for (const auto& c : t.tool_calls) {
            ++total;
            if (c.status == ToolStatus::invalid_name) continue;
            ++valid;
            if (c.status == ToolStatus::schema_violation) continue;
            ++compliant;
            if (c.status != ToolStatus::ok) continue;
            ++ok;
            if (!seen.insert(c.qualified_name() + c.args.dump()).second) ++redundant;
        }
    if (total == 0) {
        s.tool_quality = truth.trajectory.empty() ? 1.0 : 0.0;
    } else {
        const double validity = static_cast<double>(valid) / total;
        const double compliance = valid ? static_cast<double>(compliant) / valid : 0.0;
        const double economy = ok ? 1.0 - static_cast<double>(redundant) / ok : 0.0;
        s.tool_quality = (validity + compliance + economy) / 3.0;
    }

    // Completion.
    std::string answers;
    std::size_t succeeded = 0;
    for (const auto& t : dialog.turns) {
        answers += t.assistant_text + "\n";
        if (t.success) ++succeeded;
    }
    std::vector<std::string> markers = truth.assets;
    markers.insert(markers.end(), truth.target_failure_codes.begin(), truth.target_failure_codes.end());
    std::size_t hits = 0;
    for (const auto& m : markers)
        if (contains(answers, m)) ++hits;
    const double marker_rate = markers.empty() ? 1.0 : static_cast<double>(hits) / markers.size();
    s.completion = 0.5 * static_cast<double>(succeeded) / dialog.turns.size() + 0.5 * marker_rate;
    for (const auto& code : truth.target_failure_codes)
        if (!contains(answers, code)) s.completion = std::min(s.completion, 0.5);

    s.planning = quantize_score(s.planning);
    s.tool_quality = quantize_score(s.tool_quality);
    s.completion = quantize_score(s.completion);
    return s;
}

JudgeScores RemoteJudge::score(const StandardizedDialog& dialog, const GroundTruth& truth) {
    const std::string system =
        "You grade industrial operations and maintenance assistant dialogs. Compare the dialog with the ground "
        "truth and reply with one JSON object with numeric fields planning_effectiveness, tool_usage_quality and "
        "task_completion, each between 0 and 1. Planning effectiveness: did the tool sequence follow the expected "
        "trajectory. Tool usage quality: valid names, schema-conforming arguments, no redundant calls. Task "
        "completion: do the answers resolve the requests and name the target assets and failure codes.";
    Json d = dialog.to_json();
    d.erase("extras");
    const std::string user = Json{{"dialog", d}, {"ground_truth", truth.to_json()}}.dump();
    const ChatCompletion c = chat_complete(cfg_, system, user);
    std::string text = c.content;
    if (auto a = text.find('{'), b = text.rfind('}'); a != std::string::npos && b != std::string::npos && b > a)
        text = text.substr(a, b - a + 1);
    const Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw Error("judge reply is not a JSON object");
    auto field = [&](const char* k) {
        if (!j.contains(k) || !j[k].is_number()) throw Error(std::string("judge reply lacks ") + k);
        const double v = j[k].get<double>();
        if (v < 0.0 || v > 1.0) throw Error(std::string("judge score out of range: ") + k);
        return v;
    };
    return JudgeScores{field("planning_effectiveness"), field("tool_usage_quality"), field("task_completion")};
}

} // namespace assetops
