#pragma once

#include <iosfwd>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "assetops/core/dialog.hpp"
#include "assetops/profiler/event.hpp"

namespace assetops {

/// Boundary record of one finished turn.
struct TurnTiming {
    std::string dialog_id;
    int turn_index = 0;
    std::int64_t global_index = 0;
    Timestamp started_at = 0;
    DurationMs duration_ms = 0;
    bool success = false;
    std::int64_t output_chars = 0;

    Json to_json() const;
    static TurnTiming from_json(const Json& j);
};

/// Three-way split of a window. llm + tool + routing == wall always.
struct Decomposition {
    DurationMs wall_ms = 0;
    DurationMs llm_ms = 0;
    DurationMs tool_ms = 0;
    DurationMs routing_ms = 0;
};

/// llm = union of tier-1 intervals; tool = union of tier-1 and tier-2
/// intervals minus llm (llm wins overlaps); routing = the rest. Intervals are
/// clipped to [start, start + wall). Tier-3 events sit inside their tool call
/// and are not counted separately.
Decomposition decompose_window(const std::vector<ProfileEvent>& events, Timestamp start, DurationMs wall);

struct TurnProfile {
    int index = 0;
    DurationMs duration_ms = 0;
    bool success = false;
    std::int64_t output_chars = 0;
    Decomposition split;
};

struct DialogProfile {
    std::string dialog_id;
    Architecture architecture = Architecture::supervisor;
    Category category = Category::fault_diagnosis;
    DurationMs wall_ms = 0;
    DurationMs llm_ms = 0;
    DurationMs tool_ms = 0;
    DurationMs routing_ms = 0;
    std::int64_t total_tokens = 0;
    std::int64_t prompt_tokens = 0;
    std::int64_t llm_call_count = 0;
    std::int64_t tool_call_count = 0;
    std::int64_t db_query_count = 0;
    std::map<std::string, DurationMs> per_server_latency_sum;
    std::vector<TurnProfile> per_turn;

    Json to_json() const;
};

/// Run-wide event sink. Dialogs must be opened before their events arrive;
/// decomposition is available once a dialog is closed.
///
/// Thread-safe: any number of concurrent recorders.
class Profiler final : public EventSink {
public:
    void open_dialog(const std::string& dialog_id, Architecture architecture, Category category);
    /// Throws NotFoundError for a dialog that was never opened and
    /// ValidationError for a closed one.
    void record(ProfileEvent event) override;
    void record_turn(TurnTiming turn);
    void close_dialog(const std::string& dialog_id);

    bool has_dialog(const std::string& dialog_id) const;
    bool is_closed(const std::string& dialog_id) const;
    /// Dialog ids in opening order.
    std::vector<std::string> dialogs() const;
    /// Events in arrival order, optionally for one dialog.
    std::vector<ProfileEvent> events() const;
    std::vector<ProfileEvent> events_of(const std::string& dialog_id) const;
    std::vector<TurnTiming> turns_of(const std::string& dialog_id) const;

    /// Throws ValidationError when the dialog is still open.
    DialogProfile decompose(const std::string& dialog_id) const;
    /// Decomposition over the turns recorded so far, open or closed.
    DialogProfile snapshot(const std::string& dialog_id) const;
    std::vector<DialogProfile> profiles() const;

    /// One ProfileEvent per line.
    void write_event_log(std::ostream& out) const;
    /// One line per dialog header and finished turn.
    void write_turn_log(std::ostream& out) const;
    /// Rebuilds a closed run from the two logs. Throws ParseError with the
    /// offending line number.
    static void load(Profiler& into, std::istream& event_log, std::istream& turn_log);

private:
    struct DialogState {
        Architecture architecture;
        Category category;
        bool closed = false;
        std::vector<std::size_t> events;
        std::vector<TurnTiming> turns;
    };
    const DialogState& state(const std::string& dialog_id) const;
    DialogProfile build(const std::string& dialog_id, const DialogState& d) const;

    mutable std::mutex mu_;
    std::vector<ProfileEvent> events_;
    std::map<std::string, DialogState> dialogs_;
    std::vector<std::string> order_;
};

} // namespace assetops
