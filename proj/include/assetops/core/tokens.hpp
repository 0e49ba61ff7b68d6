#pragma once

#include <cstdint>
#include <string_view>

namespace assetops {

/// Deterministic token count used when no provider count is available:
/// ceil(bytes / 4).
constexpr std::int64_t estimate_tokens(std::string_view text) noexcept {
    return static_cast<std::int64_t>((text.size() + 3) / 4);
}

} // namespace assetops
