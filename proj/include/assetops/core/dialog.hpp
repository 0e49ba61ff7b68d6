#pragma once

#include <atomic>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "assetops/core/types.hpp"

namespace assetops {

enum class Category {
    fault_diagnosis,
    predictive_maintenance,
    comparative_analysis,
    maintenance_planning,
    operational_monitoring,
    knowledge_discovery,
    system_configuration,
    full_pipeline,
};

inline constexpr Category kAllCategories[] = {
    Category::fault_diagnosis,        Category::predictive_maintenance,
    Category::comparative_analysis,   Category::maintenance_planning,
    Category::operational_monitoring, Category::knowledge_discovery,
    Category::system_configuration,   Category::full_pipeline,
};

std::string_view to_string(Category c);
/// Row label used by category tables.
std::string_view display_name(Category c);
Category category_from_string(std::string_view s);

enum class Architecture { plan_execute, supervisor, supervisor_parallel };

inline constexpr Architecture kAllArchitectures[] = {
    Architecture::plan_execute, Architecture::supervisor, Architecture::supervisor_parallel};

std::string_view to_string(Architecture a);
std::string_view display_name(Architecture a);
/// Accepts the canonical names and the CLI short forms
/// ("supervisor", "supervisor-parallel").
Architecture architecture_from_string(std::string_view s);

struct Turn {
    int index = 0;
    std::int64_t global_index = 0;
    std::string user_text;
    std::string assistant_text;
    DurationMs duration_ms = 0;
    bool success = false;
    std::int64_t output_chars = 0;
};

/// Number of UTF-8 code points in `text`.
std::int64_t char_count(std::string_view text);

/// One multi-turn conversation. Turns are strictly sequential.
class DialogSession {
public:
    DialogSession(std::string dialog_id, Category category, Architecture architecture,
                  Timestamp created_at);

    const std::string& dialog_id() const noexcept { return dialog_id_; }
    Category category() const noexcept { return category_; }
    Architecture architecture() const noexcept { return architecture_; }
    Timestamp created_at() const noexcept { return created_at_; }
    const std::vector<Turn>& turns() const noexcept { return turns_; }
    bool in_progress() const noexcept { return in_progress_; }

    /// Opens turn `turns().size() + 1`. Throws ValidationError if a turn is
    /// already open.
    const Turn& begin_turn(std::string user_text, std::int64_t global_index);
    const Turn& end_turn(std::string assistant_text, DurationMs duration_ms, bool success);

private:
    std::string dialog_id_;
    Category category_;
    Architecture architecture_;
    Timestamp created_at_;
    std::vector<Turn> turns_;
    bool in_progress_ = false;
};

/// Run-wide turn numbering: 1, 2, 3, ... never repeating within a run.
class TurnCounter {
public:
    std::int64_t next() noexcept { return value_.fetch_add(1) + 1; }
    std::int64_t last() const noexcept { return value_.load(); }

private:
    std::atomic<std::int64_t> value_{0};
};

} // namespace assetops
