#include "assetops/core/clock.hpp"

#include <thread>

namespace assetops {

Clock::Clock(ClockMode mode, Timestamp virtual_start)
    : mode_(mode), virtual_now_(virtual_start), real_origin_(std::chrono::steady_clock::now()) {
    real_epoch_ms_ = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::system_clock::now().time_since_epoch())
                         .count();
}

Timestamp Clock::now() const {
    if (is_virtual()) return virtual_now_.load(std::memory_order_acquire);
    const auto elapsed = std::chrono::steady_clock::now() - real_origin_;
    return real_epoch_ms_ +
           std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
}

void Clock::elapse(DurationMs d) {
    if (d < 0) throw ValidationError("clock cannot move backwards");
    if (d == 0) return;
    if (is_virtual()) {
        virtual_now_.fetch_add(d, std::memory_order_acq_rel);
    } else {
        std::this_thread::sleep_for(std::chrono::milliseconds(d));
    }
}

} // namespace assetops
