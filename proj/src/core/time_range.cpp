#include "assetops/core/time_range.hpp"

#include <algorithm>
#include <cstdio>
#include <ctime>

namespace assetops {

TimeRange::TimeRange(Timestamp start, Timestamp end) : start_(start), end_(end) {
    if (start >= end) {
        throw ValidationError("invalid time range: start " + std::to_string(start) +
                              " >= end " + std::to_string(end));
    }
}

std::optional<TimeRange> TimeRange::intersect(const TimeRange& other) const {
    const Timestamp s = std::max(start_, other.start_);
    const Timestamp e = std::min(end_, other.end_);
    if (s >= e) return std::nullopt;
    return TimeRange(s, e);
}

TimeRange TimeRange::hull(const TimeRange& other) const {
    return TimeRange(std::min(start_, other.start_), std::max(end_, other.end_));
}

Json TimeRange::to_json() const { return Json{{"start", start_}, {"end", end_}}; }

TimeRange TimeRange::from_json(const Json& j) {
    if (!j.is_object() || !j.contains("start") || !j.contains("end") ||
        !j["start"].is_number_integer() || !j["end"].is_number_integer()) {
        throw ValidationError("time range must be an object with integer start/end");
    }
    return TimeRange(j["start"].get<Timestamp>(), j["end"].get<Timestamp>());
}

std::vector<TimeRange> normalize_ranges(std::vector<TimeRange> ranges) {
    std::sort(ranges.begin(), ranges.end());
    std::vector<TimeRange> out;
    for (const auto& r : ranges) {
        if (!out.empty() && r.start() <= out.back().end()) {
            out.back() = out.back().hull(r);
        } else {
            out.push_back(r);
        }
    }
    return out;
}

std::vector<TimeRange> interval_subtract(const TimeRange& requested,
                                         std::span<const TimeRange> covered) {
    std::vector<TimeRange> clipped;
    for (const auto& c : covered) {
        if (auto part = requested.intersect(c)) clipped.push_back(*part);
    }
    clipped = normalize_ranges(std::move(clipped));

    std::vector<TimeRange> gaps;
    Timestamp cursor = requested.start();
    for (const auto& c : clipped) {
        if (c.start() > cursor) gaps.emplace_back(cursor, c.start());
        cursor = std::max(cursor, c.end());
    }
    if (cursor < requested.end()) gaps.emplace_back(cursor, requested.end());
    return gaps;
}

std::string format_timestamp(Timestamp t) {
    const std::time_t secs = static_cast<std::time_t>(t / 1000);
    std::tm tm{};
    gmtime_r(&secs, &tm);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d %02d:%02d", tm.tm_year + 1900, tm.tm_mon + 1,
                  tm.tm_mday, tm.tm_hour, tm.tm_min);
    return buf;
}

} // namespace assetops
