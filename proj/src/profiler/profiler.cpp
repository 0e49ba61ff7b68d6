#include "assetops/profiler/profiler.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include "assetops/core/time_range.hpp"

namespace assetops {

Json TurnTiming::to_json() const {
    return Json{{"dialog_id", dialog_id},     {"turn_index", turn_index},   {"global_index", global_index},
                {"started_at", started_at},   {"duration_ms", duration_ms}, {"success", success},
                {"output_chars", output_chars}};
}

TurnTiming TurnTiming::from_json(const Json& j) {
    TurnTiming t;
    t.dialog_id = j.at("dialog_id").get<std::string>();
    t.turn_index = j.at("turn_index").get<int>();
    t.global_index = j.at("global_index").get<std::int64_t>();
    t.started_at = j.at("started_at").get<Timestamp>();
    t.duration_ms = j.at("duration_ms").get<DurationMs>();
    t.success = j.at("success").get<bool>();
    t.output_chars = j.at("output_chars").get<std::int64_t>();
    return t;
}

namespace {

DurationMs covered_length(const std::vector<TimeRange>& ranges) {
    DurationMs total = 0;
    for (const auto& r : normalize_ranges(ranges)) total += r.length();
    return total;
}

} // namespace

Decomposition decompose_window(const std::vector<ProfileEvent>& events, Timestamp start, DurationMs wall) {
    if (wall < 0) throw ValidationError("negative window");
    Decomposition d;
    d.wall_ms = wall;
    if (wall == 0) return d;
    const TimeRange window(start, start + wall);
    std::vector<TimeRange> llm, busy;
    for (const auto& e : events) {
        if (e.tier == Tier::db || e.latency_ms <= 0) continue;
        const auto clipped = TimeRange(e.started_at, e.ended_at()).intersect(window);
        if (!clipped) continue;
        busy.push_back(*clipped);
        if (e.tier == Tier::llm) llm.push_back(*clipped);
    }
    d.llm_ms = covered_length(llm);
    d.tool_ms = covered_length(busy) - d.llm_ms;
    d.routing_ms = wall - d.llm_ms - d.tool_ms;
    return d;
}

Json DialogProfile::to_json() const {
    Json turns = Json::array();
    for (const auto& t : per_turn)
        turns.push_back({{"index", t.index},
                         {"duration_ms", t.duration_ms},
                         {"success", t.success},
                         {"output_chars", t.output_chars},
                         {"llm_ms", t.split.llm_ms},
                         {"tool_ms", t.split.tool_ms},
                         {"routing_ms", t.split.routing_ms}});
    return Json{{"dialog_id", dialog_id},
                {"architecture", to_string(architecture)},
                {"category", to_string(category)},
                {"wall_ms", wall_ms},
                {"llm_ms", llm_ms},
                {"tool_ms", tool_ms},
                {"routing_ms", routing_ms},
                {"total_tokens", total_tokens},
                {"prompt_tokens", prompt_tokens},
                {"llm_call_count", llm_call_count},
                {"tool_call_count", tool_call_count},
                {"db_query_count", db_query_count},
                {"per_server_latency_sum", per_server_latency_sum},
                {"per_turn", turns}};
}

void Profiler::open_dialog(const std::string& id, Architecture architecture, Category category) {
    std::lock_guard lock(mu_);
    if (dialogs_.count(id)) throw ValidationError("dialog already open in this run: " + id);
    dialogs_.emplace(id, DialogState{architecture, category, false, {}, {}});
    order_.push_back(id);
}

void Profiler::record(ProfileEvent event) {
    std::lock_guard lock(mu_);
    auto it = dialogs_.find(event.dialog_id);
    if (it == dialogs_.end()) throw NotFoundError("profile event for unknown dialog " + event.dialog_id);
    if (it->second.closed) throw ValidationError("profile event for closed dialog " + event.dialog_id);
    if (event.latency_ms < 0) throw ValidationError("negative event latency");
    it->second.events.push_back(events_.size());
    events_.push_back(std::move(event));
}

void Profiler::record_turn(TurnTiming turn) {
    std::lock_guard lock(mu_);
    auto it = dialogs_.find(turn.dialog_id);
    if (it == dialogs_.end()) throw NotFoundError("turn for unknown dialog " + turn.dialog_id);
    if (it->second.closed) throw ValidationError("turn for closed dialog " + turn.dialog_id);
    if (turn.duration_ms < 0) throw ValidationError("negative turn duration");
    const int expected = static_cast<int>(it->second.turns.size()) + 1;
    if (turn.turn_index != expected)
        throw ValidationError("turn " + std::to_string(turn.turn_index) + " recorded, expected " +
                              std::to_string(expected));
    it->second.turns.push_back(std::move(turn));
}

void Profiler::close_dialog(const std::string& id) {
    std::lock_guard lock(mu_);
    auto it = dialogs_.find(id);
    if (it == dialogs_.end()) throw NotFoundError("unknown dialog " + id);
    it->second.closed = true;
}

bool Profiler::has_dialog(const std::string& id) const {
    std::lock_guard lock(mu_);
    return dialogs_.count(id) > 0;
}

bool Profiler::is_closed(const std::string& id) const {
    std::lock_guard lock(mu_);
    auto it = dialogs_.find(id);
    return it != dialogs_.end() && it->second.closed;
}

std::vector<std::string> Profiler::dialogs() const {
    std::lock_guard lock(mu_);
    return order_;
}

std::vector<ProfileEvent> Profiler::events() const {
    std::lock_guard lock(mu_);
    return events_;
}

const Profiler::DialogState& Profiler::state(const std::string& id) const {
    auto it = dialogs_.find(id);
    if (it == dialogs_.end()) throw NotFoundError("unknown dialog " + id);
    return it->second;
}

std::vector<ProfileEvent> Profiler::events_of(const std::string& id) const {
    std::lock_guard lock(mu_);
    std::vector<ProfileEvent> out;
    for (auto i : state(id).events) out.push_back(events_[i]);
    return out;
}

std::vector<TurnTiming> Profiler::turns_of(const std::string& id) const {
    std::lock_guard lock(mu_);
    return state(id).turns;
}

DialogProfile Profiler::build(const std::string& id, const DialogState& d) const {
    DialogProfile p;
    p.dialog_id = id;
    p.architecture = d.architecture;
    p.category = d.category;
    std::vector<ProfileEvent> evs;
    for (auto i : d.events) evs.push_back(events_[i]);
    for (const auto& e : evs) {
        if (const auto* llm = std::get_if<LlmCallRecord>(&e.detail)) {
            ++p.llm_call_count;
            p.prompt_tokens += llm->prompt_tokens;
            p.total_tokens += llm->prompt_tokens + llm->completion_tokens;
        } else if (const auto* tool = std::get_if<ToolEventInfo>(&e.detail)) {
            ++p.tool_call_count;
            p.per_server_latency_sum[tool->server] += e.latency_ms;
        } else {
            ++p.db_query_count;
        }
    }
    for (const auto& t : d.turns) {
        std::vector<ProfileEvent> in_turn;
        for (const auto& e : evs)
            if (e.turn_index == t.turn_index) in_turn.push_back(e);
        TurnProfile tp{t.turn_index, t.duration_ms, t.success, t.output_chars,
                       decompose_window(in_turn, t.started_at, t.duration_ms)};
        p.wall_ms += tp.split.wall_ms;
        p.llm_ms += tp.split.llm_ms;
        p.tool_ms += tp.split.tool_ms;
        p.routing_ms += tp.split.routing_ms;
        p.per_turn.push_back(tp);
    }
    return p;
}

DialogProfile Profiler::decompose(const std::string& id) const {
    std::lock_guard lock(mu_);
    const DialogState& d = state(id);
    if (!d.closed) throw ValidationError("dialog " + id + " is still running");
    return build(id, d);
}

DialogProfile Profiler::snapshot(const std::string& id) const {
    std::lock_guard lock(mu_);
    return build(id, state(id));
}

std::vector<DialogProfile> Profiler::profiles() const {
    std::vector<DialogProfile> out;
    for (const auto& id : dialogs()) out.push_back(decompose(id));
    return out;
}

void Profiler::write_event_log(std::ostream& out) const {
    std::lock_guard lock(mu_);
    for (const auto& e : events_) out << e.to_json().dump() << '\n';
}

void Profiler::write_turn_log(std::ostream& out) const {
    std::lock_guard lock(mu_);
    for (const auto& id : order_) {
        const DialogState& d = dialogs_.at(id);
        out << Json{{"dialog", id}, {"architecture", to_string(d.architecture)}, {"category", to_string(d.category)}}
                   .dump()
            << '\n';
        for (const auto& t : d.turns) out << t.to_json().dump() << '\n';
    }
}

namespace {

template <typename F>
void each_line(std::istream& in, F&& f) {
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (line.empty()) continue;
        Json j;
        try {
            j = Json::parse(line);
            f(j);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(e.what(), n);
        } catch (const ValidationError& e) {
            throw ParseError(e.what(), n);
        }
    }
}

} // namespace

void Profiler::load(Profiler& into, std::istream& event_log, std::istream& turn_log) {
    each_line(turn_log, [&](const Json& j) {
        if (j.contains("dialog"))
            into.open_dialog(j.at("dialog").get<std::string>(),
                             architecture_from_string(j.at("architecture").get<std::string>()),
                             category_from_string(j.at("category").get<std::string>()));
        else
            into.record_turn(TurnTiming::from_json(j));
    });
    each_line(event_log, [&](const Json& j) { into.record(ProfileEvent::from_json(j)); });
    for (const auto& id : into.dialogs()) into.close_dialog(id);
}

} // namespace assetops
