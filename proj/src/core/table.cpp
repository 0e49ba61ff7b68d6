#include "assetops/core/table.hpp"

#include <algorithm>
#include <cstdio>

#include "assetops/core/dialog.hpp"

namespace assetops {

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string TextTable::render() const {
    std::vector<std::size_t> width(headers.size(), 0);
    for (std::size_t c = 0; c < headers.size(); ++c) width[c] = static_cast<std::size_t>(char_count(headers[c]));
    for (const auto& r : rows)
        for (std::size_t c = 0; c < r.size() && c < width.size(); ++c)
            width[c] = std::max(width[c], static_cast<std::size_t>(char_count(r[c])));

    auto line = [&](const std::vector<std::string>& cells) {
        std::string out;
        for (std::size_t c = 0; c < width.size(); ++c) {
            const std::string cell = c < cells.size() ? cells[c] : "";
            const std::size_t pad = width[c] - static_cast<std::size_t>(char_count(cell));
            if (c) out += "  ";
            if (c == 0) out += cell + std::string(pad, ' ');
            else out += std::string(pad, ' ') + cell;
        }
        while (!out.empty() && out.back() == ' ') out.pop_back();
        return out + "\n";
    };
    std::string out;
    if (!title.empty()) out += title + "\n";
    out += line(headers);
    std::size_t total = 0;
    for (auto w : width) total += w;
    total += width.empty() ? 0 : 2 * (width.size() - 1);
    out += std::string(total, '-') + "\n";
    for (const auto& r : rows) out += line(r);
    return out;
}

} // namespace assetops
