#include "assetops/agents/intent.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <regex>

namespace assetops {

Json Intent::to_json() const {
    Json refs = Json::object();
    for (const auto& [k, v] : referents) refs[k] = v;
    return Json{{"category", to_string(category)},
                {"asset_ids", asset_ids},
                {"time_range", time_range ? time_range->to_json() : Json(nullptr)},
                {"channels", channels},
                {"horizon", horizon},
                {"referents", refs},
                {"needs_clarification", needs_clarification},
                {"clarification", clarification}};
}

Intent Intent::from_json(const Json& j) {
    Intent i;
    i.category = category_from_string(j.at("category").get<std::string>());
    i.asset_ids = j.value("asset_ids", std::vector<std::string>{});
    if (j.contains("time_range") && !j["time_range"].is_null()) i.time_range = TimeRange::from_json(j["time_range"]);
    i.channels = j.value("channels", std::vector<std::string>{});
    i.horizon = j.value("horizon", 24);
    if (j.contains("referents"))
        for (auto it = j["referents"].begin(); it != j["referents"].end(); ++it)
            i.referents[it.key()] = it.value().get<std::string>();
    i.needs_clarification = j.value("needs_clarification", false);
    i.clarification = j.value("clarification", "");
    return i;
}

const std::vector<CategoryRule>& category_rules() {
    static const std::vector<CategoryRule> rules{
        {Category::full_pipeline,
         {"end-to-end", "end to end", "full pipeline", "full workup", "complete assessment", "from diagnosis to"}},
        {Category::comparative_analysis, {"compare", "comparison", " versus ", " vs ", "both chillers", "which of"}},
        {Category::maintenance_planning,
         {"maintenance plan", "plan maintenance", "schedule maintenance", "work order", "work-order",
          "what maintenance", "maintenance should", "maintenance action"}},
        {Category::predictive_maintenance,
         {"forecast", "predict", "next ", "upcoming", "going to fail", "will it", "remaining life"}},
        {Category::fault_diagnosis,
         {"overheat", "fault", "diagnos", "why ", "anomal", "alarm", "root cause", "failure code", "failure mode",
          "what is wrong", "abnormal", "spike", "deviation"}},
        {Category::system_configuration,
         {"configur", "setpoint", "set point", "threshold", "convert", "units"}},
        {Category::knowledge_discovery,
         {"what is ", "tell me about", "describe", "explain", "specification", "metadata", "what kind",
          "which refrigerant", "how old"}},
        {Category::operational_monitoring,
         {"monitor", "status", "trend", "running", "overview", "summary of", "how is", "how are", "operating"}},
    };
    return rules;
}

std::vector<std::string> default_channels(Category c) {
    switch (c) {
    case Category::predictive_maintenance: return {"power_kw"};
    case Category::operational_monitoring: return {"supply_temp", "power_kw"};
    default: return {"supply_temp"};
    }
}

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

bool has(const std::string& text, std::string_view phrase) { return text.find(phrase) != std::string::npos; }

bool has_word(const std::string& text, const std::string& word) {
    const std::regex re("(^|[^a-z])" + word + "([^a-z]|$)");
    return std::regex_search(text, re);
}

std::vector<std::string> explicit_assets(const std::string& text) {
    static const std::regex re("ch-?\\s?(\\d{1,3})");
    std::vector<std::string> out;
    for (auto it = std::sregex_iterator(text.begin(), text.end(), re); it != std::sregex_iterator(); ++it) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "CH-%02d", std::stoi((*it)[1].str()));
        if (std::find(out.begin(), out.end(), buf) == out.end()) out.emplace_back(buf);
    }
    return out;
}

std::vector<std::string> channels_in(const std::string& text) {
    std::vector<std::string> out;
    auto add = [&](const char* c) {
        if (std::find(out.begin(), out.end(), c) == out.end()) out.emplace_back(c);
    };
    if (has(text, "supply") || has(text, "overheat") || has(text, "chilled-water temp") || has(text, "leaving water"))
        add("supply_temp");
    if (has(text, "power") || has(text, "energy") || has(text, "kw") || has(text, "consumption")) add("power_kw");
    if (has(text, "condenser")) add("condenser_temp");
    if (out.empty() && has(text, "temperature")) add("supply_temp");
    return out;
}

std::optional<TimeRange> explicit_range(const std::string& text, Timestamp end) {
    static const std::regex last_days("(last|past) (\\d+) days");
    static const std::regex last_hours("(last|past) (\\d+) hours");
    std::smatch m;
    if (std::regex_search(text, m, last_days)) return TimeRange(end - std::stoll(m[2].str()) * kDayMs, end);
    if (std::regex_search(text, m, last_hours)) return TimeRange(end - std::stoll(m[2].str()) * kHourMs, end);
    if (has(text, "previous week") || has(text, "week before") || has(text, "prior week"))
        return TimeRange(end - 14 * kDayMs, end - 7 * kDayMs);
    if (has(text, "last month") || has(text, "past month") || has(text, "this month"))
        return TimeRange(end - 30 * kDayMs, end);
    if (has(text, "quarter") || has(text, "whole window") || has(text, "all data"))
        return TimeRange(end - 90 * kDayMs, end);
    if (has(text, "today") || has(text, "last day") || has(text, "past day")) return TimeRange(end - kDayMs, end);
    if (has(text, "this week") || has(text, "last week") || has(text, "past week"))
        return TimeRange(end - 7 * kDayMs, end);
    return std::nullopt;
}

std::optional<int> explicit_horizon(const std::string& text) {
    static const std::regex hours("next (\\d+) hours");
    static const std::regex days("next (\\d+) days");
    std::smatch m;
    if (std::regex_search(text, m, hours)) return std::stoi(m[1].str());
    if (std::regex_search(text, m, days)) return std::stoi(m[1].str()) * 24;
    if (has(text, "tomorrow") || has(text, "next day")) return 24;
    if (has(text, "next week")) return 168;
    return std::nullopt;
}

std::string join(const std::vector<std::string>& v) {
    std::string out;
    for (const auto& s : v) out += (out.empty() ? "" : ",") + s;
    return out;
}

} // namespace

Intent interpret_intent_rules(std::string_view raw, const std::vector<Intent>& history, Timestamp window_end) {
    const std::string text = lower(raw);
    const Intent* prev = nullptr;
    for (auto it = history.rbegin(); it != history.rend(); ++it)
        if (!it->needs_clarification) {
            prev = &*it;
            break;
        }

    Intent in;
    std::optional<Category> matched;
    for (const auto& rule : category_rules()) {
        for (auto p : rule.phrases)
            if (has(text, p)) {
                matched = rule.category;
                break;
            }
        if (matched) break;
    }

    // Recently mentioned assets, most recent first.
    std::vector<std::string> recent;
    for (auto it = history.rbegin(); it != history.rend(); ++it)
        for (auto a = it->asset_ids.rbegin(); a != it->asset_ids.rend(); ++a)
            if (std::find(recent.begin(), recent.end(), *a) == recent.end()) recent.push_back(*a);

    in.asset_ids = explicit_assets(text);
    bool follow_up = false;
    static const std::vector<std::string> phrases{"the same chiller", "that chiller", "this chiller",
                                                  "the same unit", "that unit", "same asset"};
    for (const auto& p : phrases)
        if (has(text, p) && !recent.empty()) {
            const std::string& a = recent.front();
            if (std::find(in.asset_ids.begin(), in.asset_ids.end(), a) == in.asset_ids.end())
                in.asset_ids.insert(in.asset_ids.begin(), a);
            in.referents[p] = a;
            follow_up = true;
        }
    if (has_word(text, "both") && recent.size() >= 2 && in.asset_ids.empty()) {
        in.asset_ids = {recent[1], recent[0]};
        std::sort(in.asset_ids.begin(), in.asset_ids.end());
        in.referents["both"] = join(in.asset_ids);
        follow_up = true;
    }
    for (const char* w : {"it", "its", "them", "they"}) {
        if (has_word(text, w) && !recent.empty() && in.asset_ids.empty()) {
            if (prev) in.asset_ids = prev->asset_ids;
            in.referents[w] = join(in.asset_ids);
            follow_up = true;
        }
    }
    if (in.asset_ids.empty() && prev) {
        in.asset_ids = prev->asset_ids;
        follow_up = true;
    }
    // "compare it with CH-03": keep the referent and add the explicit one.
    if (matched == Category::comparative_analysis && in.asset_ids.size() == 1 && !recent.empty() &&
        recent.front() != in.asset_ids.front()) {
        in.asset_ids.insert(in.asset_ids.begin(), recent.front());
        in.referents["compared with"] = recent.front();
    }

    if (in.asset_ids.empty()) {
        in.needs_clarification = true;
        in.category = matched.value_or(Category::operational_monitoring);
        in.clarification =
            "Which chiller should I look at? Please name an asset (for example CH-01) and, optionally, a time window.";
        return in;
    }

    in.category = matched ? *matched : (prev && follow_up ? prev->category : Category::operational_monitoring);
    if (in.category == Category::comparative_analysis && in.asset_ids.size() < 2 && recent.size() >= 2) {
        in.asset_ids = {recent[1], recent[0]};
        std::sort(in.asset_ids.begin(), in.asset_ids.end());
    }

    in.time_range = explicit_range(text, window_end);
    if (!in.time_range) in.time_range = (follow_up && prev && prev->time_range) ? prev->time_range
                                                                                 : TimeRange(window_end - 7 * kDayMs, window_end);

    in.channels = channels_in(text);
    if (in.channels.empty())
        in.channels = (follow_up && prev && !prev->channels.empty()) ? prev->channels : default_channels(in.category);
    if (in.category == Category::operational_monitoring && in.channels.size() < 2) {
        for (const auto& c : default_channels(Category::operational_monitoring))
            if (std::find(in.channels.begin(), in.channels.end(), c) == in.channels.end() && in.channels.size() < 2)
                in.channels.push_back(c);
    }

    const auto h = explicit_horizon(text);
    in.horizon = std::clamp(h ? *h : (prev && follow_up ? prev->horizon : 24), 1, 168);
    return in;
}

} // namespace assetops
