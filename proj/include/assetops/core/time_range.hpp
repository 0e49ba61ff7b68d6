#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "assetops/core/types.hpp"

namespace assetops {

/// Half-open interval [start, end) in epoch milliseconds. Never empty.
class TimeRange {
public:
    /// Throws ValidationError unless start < end.
    TimeRange(Timestamp start, Timestamp end);

    Timestamp start() const noexcept { return start_; }
    Timestamp end() const noexcept { return end_; }
    DurationMs length() const noexcept { return end_ - start_; }

    bool contains(Timestamp t) const noexcept { return t >= start_ && t < end_; }
    bool contains(const TimeRange& other) const noexcept {
        return other.start_ >= start_ && other.end_ <= end_;
    }
    bool overlaps(const TimeRange& other) const noexcept {
        return other.start_ < end_ && start_ < other.end_;
    }

    std::optional<TimeRange> intersect(const TimeRange& other) const;
    TimeRange hull(const TimeRange& other) const;

    auto operator<=>(const TimeRange&) const = default;

    Json to_json() const;
    static TimeRange from_json(const Json& j);

private:
    Timestamp start_;
    Timestamp end_;
};

/// The part of `requested` not covered by any range in `covered`, as sorted
/// disjoint ranges. `covered` may be unsorted and overlapping.
std::vector<TimeRange> interval_subtract(const TimeRange& requested,
                                         std::span<const TimeRange> covered);

/// Sorted, disjoint union of the given ranges (adjacent ranges are joined).
std::vector<TimeRange> normalize_ranges(std::vector<TimeRange> ranges);

/// ISO-8601 UTC rendering, minute precision ("2024-03-24 00:00").
std::string format_timestamp(Timestamp t);

} // namespace assetops
