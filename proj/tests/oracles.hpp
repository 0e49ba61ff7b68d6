#pragma once

// Brute-force reference implementations used to check the real ones.

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

namespace oracle {

using Span = std::pair<std::int64_t, std::int64_t>;

/// Marks every unit step [t, t+1) covered by any span, within [lo, hi).
inline std::vector<bool> mark(std::int64_t lo, std::int64_t hi, const std::vector<Span>& spans) {
    std::vector<bool> on(static_cast<std::size_t>(hi - lo), false);
    for (auto [s, e] : spans)
        for (auto t = std::max(s, lo); t < std::min(e, hi); ++t) on[static_cast<std::size_t>(t - lo)] = true;
    return on;
}

/// Runs of `want` read off a step mask, as half-open spans.
inline std::vector<Span> runs(std::int64_t lo, const std::vector<bool>& on, bool want) {
    std::vector<Span> out;
    std::size_t i = 0;
    while (i < on.size()) {
        if (on[i] != want) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < on.size() && on[j] == want) ++j;
        out.emplace_back(lo + static_cast<std::int64_t>(i), lo + static_cast<std::int64_t>(j));
        i = j;
    }
    return out;
}

inline std::vector<Span> subtract(Span requested, const std::vector<Span>& covered) {
    return runs(requested.first, mark(requested.first, requested.second, covered), false);
}

inline std::int64_t union_length(const std::vector<Span>& spans) {
    if (spans.empty()) return 0;
    std::int64_t lo = spans.front().first, hi = spans.front().second;
    for (auto [s, e] : spans) {
        lo = std::min(lo, s);
        hi = std::max(hi, e);
    }
    if (hi <= lo) return 0;
    const auto on = mark(lo, hi, spans);
    return std::count(on.begin(), on.end(), true);
}

} // namespace oracle
