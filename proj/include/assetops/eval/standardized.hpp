#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "assetops/core/types.hpp"
#include "assetops/exec/engine.hpp"
#include "assetops/tools/tool_call.hpp"

namespace assetops {

inline constexpr const char* kStandardizedFormat = "standardized-dialog/1";

struct StandardCall {
    std::string call_id;
    std::string server;
    std::string tool;
    Json args = Json::object();
    ToolStatus status = ToolStatus::ok;
    DurationMs latency_ms = 0;
    std::optional<std::string> error_detail;

    std::string qualified_name() const { return server + "." + tool; }
    Json to_json() const;
    static StandardCall from_json(const Json& j);
};

struct StandardTurn {
    int index = 0;
    std::string user_text;
    std::string assistant_text;
    bool success = false;
    std::vector<StandardCall> tool_calls;
    std::vector<RecoveryRecord> recovery_records;
    /// Fields of the source turn that neither registered shape defines.
    Json extras = Json::object();

    Json to_json() const;
    static StandardTurn from_json(const Json& j);
};

/// Architecture-independent form of one rollout.
struct StandardizedDialog {
    std::string dialog_id;
    std::string category;
    std::string architecture;
    std::vector<StandardTurn> turns;
    std::optional<std::string> ground_truth_ref;
    Json extras = Json::object();

    bool completed() const;
    bool has_recovery() const;
    std::size_t call_count() const;

    Json to_json() const;
    static StandardizedDialog from_json(const Json& j);
};

/// Detects the shape by its discriminator: an "events" array (plan-execute
/// log), a "turns" array (supervisor log) or an already standardized record.
/// Throws ValidationError naming the missing discriminator otherwise.
StandardizedDialog normalize(const Json& raw);
/// Parses then normalizes; malformed JSON throws ParseError with its line.
StandardizedDialog normalize_text(const std::string& text, const std::string& label = "rollout");
StandardizedDialog normalize_file(const std::filesystem::path& path);

} // namespace assetops
