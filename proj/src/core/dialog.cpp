#include "assetops/core/dialog.hpp"

#include <array>
#include <utility>

namespace assetops {

namespace {

struct CategoryName {
    Category value;
    std::string_view slug;
    std::string_view display;
};

constexpr std::array<CategoryName, 8> kCategoryNames{{
    {Category::fault_diagnosis, "fault-diagnosis", "Fault Diagnosis"},
    {Category::predictive_maintenance, "predictive-maintenance", "Predictive Maintenance"},
    {Category::comparative_analysis, "comparative-analysis", "Comparative Analysis"},
    {Category::maintenance_planning, "maintenance-planning", "Maintenance Planning"},
    {Category::operational_monitoring, "operational-monitoring", "Operational Monitoring"},
    {Category::knowledge_discovery, "knowledge-discovery", "Knowledge Discovery / Onboarding"},
    {Category::system_configuration, "system-configuration", "System Configuration"},
    {Category::full_pipeline, "full-pipeline", "Full Pipeline (End-to-End)"},
}};

} // namespace

std::string_view to_string(Category c) {
    for (const auto& n : kCategoryNames)
        if (n.value == c) return n.slug;
    return "unknown";
}

std::string_view display_name(Category c) {
    for (const auto& n : kCategoryNames)
        if (n.value == c) return n.display;
    return "Unknown";
}

Category category_from_string(std::string_view s) {
    for (const auto& n : kCategoryNames)
        if (n.slug == s || n.display == s) return n.value;
    throw ValidationError("unknown task category: " + std::string(s));
}

std::string_view to_string(Architecture a) {
    switch (a) {
    case Architecture::plan_execute: return "plan-execute";
    case Architecture::supervisor: return "supervisor-specialist";
    case Architecture::supervisor_parallel: return "supervisor-specialist-parallel";
    }
    return "unknown";
}

std::string_view display_name(Architecture a) {
    switch (a) {
    case Architecture::plan_execute: return "Plan-Execute";
    case Architecture::supervisor: return "Supervisor-Specialist";
    case Architecture::supervisor_parallel: return "Supervisor-Specialist (Parallel)";
    }
    return "Unknown";
}

Architecture architecture_from_string(std::string_view s) {
    if (s == "plan-execute") return Architecture::plan_execute;
    if (s == "supervisor" || s == "supervisor-specialist") return Architecture::supervisor;
    if (s == "supervisor-parallel" || s == "supervisor-specialist-parallel")
        return Architecture::supervisor_parallel;
    throw ValidationError("unknown architecture: " + std::string(s));
}

std::int64_t char_count(std::string_view text) {
    std::int64_t n = 0;
    for (unsigned char c : text)
        if ((c & 0xC0) != 0x80) ++n;
    return n;
}

DialogSession::DialogSession(std::string dialog_id, Category category,
                             Architecture architecture, Timestamp created_at)
    : dialog_id_(std::move(dialog_id)), category_(category), architecture_(architecture),
      created_at_(created_at) {
    if (dialog_id_.empty()) throw ValidationError("dialog id must not be empty");
}

const Turn& DialogSession::begin_turn(std::string user_text, std::int64_t global_index) {
    if (in_progress_) throw ValidationError("dialog " + dialog_id_ + " already has a turn in progress");
    if (global_index <= 0) throw ValidationError("global turn index must be positive");
    Turn t;
    t.index = static_cast<int>(turns_.size()) + 1;
    t.global_index = global_index;
    t.user_text = std::move(user_text);
    turns_.push_back(std::move(t));
    in_progress_ = true;
    return turns_.back();
}

const Turn& DialogSession::end_turn(std::string assistant_text, DurationMs duration_ms,
                                    bool success) {
    if (!in_progress_) throw ValidationError("dialog " + dialog_id_ + " has no turn in progress");
    if (duration_ms < 0) throw ValidationError("turn duration must be non-negative");
    Turn& t = turns_.back();
    t.output_chars = char_count(assistant_text);
    t.assistant_text = std::move(assistant_text);
    t.duration_ms = duration_ms;
    t.success = success;
    in_progress_ = false;
    return t;
}

} // namespace assetops
