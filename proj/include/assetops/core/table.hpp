#pragma once

#include <string>
#include <vector>

namespace assetops {

/// Aligned plain-text table. The first column is left-aligned, the rest
/// right-aligned.
struct TextTable {
    std::string title;
    std::vector<std::string> headers;
    std::vector<std::vector<std::string>> rows;

    std::string render() const;
};

/// Fixed-point rendering with `digits` decimals.
std::string fixed(double v, int digits);

} // namespace assetops
