#pragma once

#include <atomic>
#include <chrono>

#include "assetops/core/types.hpp"

namespace assetops {

enum class ClockMode { real, virtual_time };

/// Time source shared by one run. In virtual mode time moves only through
/// elapse() and never backwards; in real mode elapse() sleeps.
///
/// Single writer (the coordinator that owns the run), any number of readers.
class Clock {
public:
    static constexpr Timestamp kDefaultVirtualStart = 1711929600000; // 2024-04-01 00:00 UTC

    explicit Clock(ClockMode mode, Timestamp virtual_start = kDefaultVirtualStart);

    Clock(const Clock&) = delete;
    Clock& operator=(const Clock&) = delete;

    ClockMode mode() const noexcept { return mode_; }
    bool is_virtual() const noexcept { return mode_ == ClockMode::virtual_time; }

    Timestamp now() const;

    /// Let `d` milliseconds pass. Negative durations are rejected.
    void elapse(DurationMs d);

private:
    ClockMode mode_;
    std::atomic<Timestamp> virtual_now_;
    Timestamp real_epoch_ms_;
    std::chrono::steady_clock::time_point real_origin_;
};

} // namespace assetops
