#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "assetops/core/dialog.hpp"
#include "assetops/core/time_range.hpp"

namespace assetops {

struct Intent {
    Category category = Category::fault_diagnosis;
    std::vector<std::string> asset_ids;
    std::optional<TimeRange> time_range;
    std::vector<std::string> channels;
    int horizon = 24;
    /// Anaphoric phrase -> resolved asset id(s), comma separated.
    std::map<std::string, std::string> referents;
    bool needs_clarification = false;
    std::string clarification;

    Json to_json() const;
    static Intent from_json(const Json& j);
};

/// Category keyword table, checked in order; the first row with a matching
/// phrase wins. Exposed so reports and docs can print it.
struct CategoryRule {
    Category category;
    std::vector<std::string_view> phrases;
};
const std::vector<CategoryRule>& category_rules();

/// Default channels per category when the text names none.
std::vector<std::string> default_channels(Category c);

/// Rule-based interpretation used by the scripted planner.
///
/// `history` holds the intents of earlier turns of the same dialog (oldest
/// first); `window_end` is the end of the data window that relative phrases
/// ("this week", "last month") are anchored to.
///
///  - category: keyword table; a follow-up without keywords keeps the previous
///    category, a fresh question without keywords is operational monitoring.
///  - assets: "CH-<n>" mentions; otherwise anaphora ("the same chiller",
///    "that chiller", "it", "both", ...) or an implicit follow-up resolve to
///    the most recent asset(s). Nothing resolvable means clarification.
///  - range: explicit phrase, else the previous range for follow-ups, else
///    the last seven days.
Intent interpret_intent_rules(std::string_view text, const std::vector<Intent>& history, Timestamp window_end);

} // namespace assetops
