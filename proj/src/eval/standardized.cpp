#include "assetops/eval/standardized.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace assetops {

namespace {

Json optional_text(const std::optional<std::string>& s) { return s ? Json(*s) : Json(nullptr); }

std::optional<std::string> text_or_null(const Json& j, const char* key) {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    return j[key].get<std::string>();
}

/// Copies every key of `src` outside `known` into `extras` under `prefix`.
void keep_unknown(const Json& src, const std::set<std::string>& known, Json& extras, const std::string& prefix = "") {
    for (auto it = src.begin(); it != src.end(); ++it)
        if (!known.count(it.key())) extras[prefix + it.key()] = it.value();
}

const Json& require(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) throw ValidationError(where + ": missing field '" + key + "'");
    return j[key];
}

StandardizedDialog from_supervisor(const Json& raw) {
    static const std::set<std::string> top{"format", "dialog_id", "category", "architecture", "turns"};
    static const std::set<std::string> turn_keys{"index",         "user_text", "intent",  "routing",    "artifacts",
                                                 "plan_revision", "assistant_text", "success", "duration_ms"};
    static const std::set<std::string> route_keys{"subtask_id", "specialist", "status",
                                                  "tool_calls", "recovery",   "artifact_id"};
    static const std::set<std::string> call_keys{"call_id", "dialog_id",  "turn_index", "server",      "tool",
                                                 "args",    "status",     "latency_ms", "started_at", "error_detail"};
    StandardizedDialog d;
    d.dialog_id = require(raw, "dialog_id", "supervisor rollout").get<std::string>();
    d.category = require(raw, "category", "supervisor rollout").get<std::string>();
    d.architecture = require(raw, "architecture", "supervisor rollout").get<std::string>();
    keep_unknown(raw, top, d.extras);
    for (const auto& t : raw["turns"]) {
        const std::string where = d.dialog_id + " turn";
        StandardTurn st;
        st.index = require(t, "index", where).get<int>();
        st.user_text = require(t, "user_text", where).get<std::string>();
        st.assistant_text = require(t, "assistant_text", where).get<std::string>();
        st.success = require(t, "success", where).get<bool>();
        keep_unknown(t, turn_keys, st.extras);
        for (const auto& r : t.value("routing", Json::array())) {
            keep_unknown(r, route_keys, st.extras, r.value("subtask_id", std::string("routing")) + ".");
            for (const auto& c : r.value("tool_calls", Json::array())) {
                StandardCall sc;
                sc.call_id = require(c, "call_id", where).get<std::string>();
                sc.server = require(c, "server", where).get<std::string>();
                sc.tool = require(c, "tool", where).get<std::string>();
                sc.args = c.value("args", Json::object());
                sc.status = tool_status_from_string(require(c, "status", where).get<std::string>());
                sc.latency_ms = c.value("latency_ms", DurationMs{0});
                sc.error_detail = text_or_null(c, "error_detail");
                keep_unknown(c, call_keys, st.extras, sc.call_id + ".");
                st.tool_calls.push_back(std::move(sc));
            }
            for (const auto& rec : r.value("recovery", Json::array()))
                st.recovery_records.push_back(RecoveryRecord::from_json(rec));
        }
        d.turns.push_back(std::move(st));
    }
    return d;
}

StandardizedDialog from_baseline(const Json& raw) {
    static const std::set<std::string> top{"run", "events"};
    static const std::set<std::string> run_keys{"id", "category", "arch"};
    static const std::set<std::string> user_keys{"type", "turn", "text"};
    static const std::set<std::string> tool_keys{"type",    "turn",       "call", "name",
                                                 "arguments", "outcome", "elapsed_ms", "error"};
    static const std::set<std::string> recovery_keys{"type", "turn", "call", "actions", "final"};
    static const std::set<std::string> assistant_keys{"type", "turn", "text", "ok"};

    const Json& run = require(raw, "run", "plan-execute rollout");
    StandardizedDialog d;
    d.dialog_id = require(run, "id", "plan-execute rollout run").get<std::string>();
    d.category = require(run, "category", "plan-execute rollout run").get<std::string>();
    d.architecture = require(run, "arch", "plan-execute rollout run").get<std::string>();
    keep_unknown(raw, top, d.extras);
    keep_unknown(run, run_keys, d.extras, "run.");

    StandardTurn* open = nullptr;
    std::size_t n = 0;
    for (const auto& e : raw["events"]) {
        const std::string where = d.dialog_id + " event " + std::to_string(n++);
        const std::string type = require(e, "type", where).get<std::string>();
        const int turn = require(e, "turn", where).get<int>();
        if (type == "user") {
            StandardTurn t;
            t.index = turn;
            t.user_text = require(e, "text", where).get<std::string>();
            keep_unknown(e, user_keys, t.extras, "user.");
            d.turns.push_back(std::move(t));
            open = &d.turns.back();
            continue;
        }
        if (!open || open->index != turn) {
            if (type != "tool" && type != "recovery" && type != "assistant") {
                d.extras["unrecognized_events"].push_back(e);
                continue;
            }
            throw ValidationError(where + ": event for turn " + std::to_string(turn) + " outside an open turn");
        }
        if (type == "tool") {
            StandardCall sc;
            sc.call_id = require(e, "call", where).get<std::string>();
            const std::string name = require(e, "name", where).get<std::string>();
            const auto dot = name.find('.');
            sc.server = dot == std::string::npos ? std::string() : name.substr(0, dot);
            sc.tool = dot == std::string::npos ? name : name.substr(dot + 1);
            sc.args = e.value("arguments", Json::object());
            sc.status = tool_status_from_string(require(e, "outcome", where).get<std::string>());
            sc.latency_ms = e.value("elapsed_ms", DurationMs{0});
            sc.error_detail = text_or_null(e, "error");
            keep_unknown(e, tool_keys, open->extras, sc.call_id + ".");
            open->tool_calls.push_back(std::move(sc));
        } else if (type == "recovery") {
            RecoveryRecord r;
            r.call_id = require(e, "call", where).get<std::string>();
            for (const auto& a : require(e, "actions", where))
                r.actions.push_back(recovery_action_from_string(a.get<std::string>()));
            r.final_status = tool_status_from_string(require(e, "final", where).get<std::string>());
            keep_unknown(e, recovery_keys, open->extras, r.call_id + ".recovery.");
            open->recovery_records.push_back(std::move(r));
        } else if (type == "assistant") {
            open->assistant_text = require(e, "text", where).get<std::string>();
            open->success = require(e, "ok", where).get<bool>();
            keep_unknown(e, assistant_keys, open->extras, "assistant.");
            open = nullptr;
        } else {
            d.extras["unrecognized_events"].push_back(e);
        }
    }
    return d;
}

std::size_t line_of(const std::string& text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

} // namespace

Json StandardCall::to_json() const {
    return Json{{"call_id", call_id},
                {"server", server},
                {"tool", tool},
                {"args", args},
                {"status", to_string(status)},
                {"latency_ms", latency_ms},
                {"error_detail", optional_text(error_detail)}};
}

StandardCall StandardCall::from_json(const Json& j) {
    StandardCall c;
    c.call_id = j.at("call_id").get<std::string>();
    c.server = j.at("server").get<std::string>();
    c.tool = j.at("tool").get<std::string>();
    c.args = j.value("args", Json::object());
    c.status = tool_status_from_string(j.at("status").get<std::string>());
    c.latency_ms = j.value("latency_ms", DurationMs{0});
    c.error_detail = text_or_null(j, "error_detail");
    return c;
}

Json StandardTurn::to_json() const {
    Json calls = Json::array();
    for (const auto& c : tool_calls) calls.push_back(c.to_json());
    Json recs = Json::array();
    for (const auto& r : recovery_records) recs.push_back(r.to_json());
    return Json{{"index", index},
                {"user_text", user_text},
                {"assistant_text", assistant_text},
                {"success", success},
                {"tool_calls", calls},
                {"recovery_records", recs},
                {"extras", extras}};
}

StandardTurn StandardTurn::from_json(const Json& j) {
    StandardTurn t;
    t.index = j.at("index").get<int>();
    t.user_text = j.at("user_text").get<std::string>();
    t.assistant_text = j.at("assistant_text").get<std::string>();
    t.success = j.at("success").get<bool>();
    for (const auto& c : j.at("tool_calls")) t.tool_calls.push_back(StandardCall::from_json(c));
    for (const auto& r : j.at("recovery_records")) t.recovery_records.push_back(RecoveryRecord::from_json(r));
    t.extras = j.value("extras", Json::object());
    return t;
}

bool StandardizedDialog::completed() const {
    return !turns.empty() && std::all_of(turns.begin(), turns.end(), [](const StandardTurn& t) { return t.success; });
}

bool StandardizedDialog::has_recovery() const {
    return std::any_of(turns.begin(), turns.end(), [](const StandardTurn& t) { return !t.recovery_records.empty(); });
}

std::size_t StandardizedDialog::call_count() const {
    std::size_t n = 0;
    for (const auto& t : turns) n += t.tool_calls.size();
    return n;
}

Json StandardizedDialog::to_json() const {
    Json ts = Json::array();
    for (const auto& t : turns) ts.push_back(t.to_json());
    return Json{{"format", kStandardizedFormat},
                {"dialog_id", dialog_id},
                {"category", category},
                {"architecture", architecture},
                {"turns", ts},
                {"ground_truth_ref", optional_text(ground_truth_ref)},
                {"extras", extras}};
}

StandardizedDialog StandardizedDialog::from_json(const Json& j) {
    StandardizedDialog d;
    d.dialog_id = j.at("dialog_id").get<std::string>();
    d.category = j.at("category").get<std::string>();
    d.architecture = j.at("architecture").get<std::string>();
    for (const auto& t : j.at("turns")) d.turns.push_back(StandardTurn::from_json(t));
    d.ground_truth_ref = text_or_null(j, "ground_truth_ref");
    d.extras = j.value("extras", Json::object());
    return d;
}

StandardizedDialog normalize(const Json& raw) {
    if (!raw.is_object()) throw ValidationError("rollout must be a JSON object");
    try {
        if (raw.value("format", std::string()) == kStandardizedFormat) return StandardizedDialog::from_json(raw);
        if (raw.contains("events") && raw["events"].is_array()) return from_baseline(raw);
        if (raw.contains("turns") && raw["turns"].is_array()) return from_supervisor(raw);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed rollout: ") + e.what());
    }
    throw ValidationError(
        "unrecognized rollout shape: missing discriminator, expected an 'events' array (plan-execute log) or a "
        "'turns' array (supervisor log)");
}

StandardizedDialog normalize_text(const std::string& text, const std::string& label) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(label + " is not valid JSON: " + e.what(), line_of(text, e.byte));
    }
    return normalize(j);
}

StandardizedDialog normalize_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw NotFoundError("cannot open rollout " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return normalize_text(ss.str(), path.string());
}

} // namespace assetops
