#pragma once

#include <deque>
#include <map>
#include <set>
#include <shared_mutex>
#include <string>
#include <vector>

#include "assetops/artifacts/artifact.hpp"

namespace assetops {

struct CoverageDecision {
    /// Eligible stored artifacts, most recent turn first, then insertion order.
    std::vector<const Artifact*> reused;
    /// Uncovered parts of the request; empty iff fully answerable from the store.
    std::vector<EvidenceRequest> gaps;
    /// Reused evidence clipped to the request range, in `reused` order.
    std::vector<EvidenceSlice> covered;
    /// Source artifact id of each entry in `covered`.
    std::vector<std::string> covered_from;

    bool fully_covered() const noexcept { return gaps.empty(); }
    std::vector<std::string> reused_ids() const;
};

/// Per-dialog cross-turn memory. One writer (the session's orchestrator),
/// any number of readers.
class ArtifactStore {
public:
    explicit ArtifactStore(std::string dialog_id, bool enabled = true);

    const std::string& dialog_id() const noexcept { return dialog_id_; }
    /// A disabled store still records artifacts but never reports coverage.
    bool enabled() const noexcept { return enabled_; }

    /// Declares a ToolCall of this dialog so artifacts may reference it.
    void register_call(const std::string& call_id);

    /// Fresh id of the form "<dialog_id>/art-NNN".
    std::string next_id();

    /// Throws ValidationError on a duplicate id, foreign dialog, confidence
    /// outside [0,1], unknown invoked_tools reference, or a tool-derived
    /// artifact without asset_id.
    std::string put(Artifact artifact);

    const Artifact* get(const std::string& artifact_id) const;
    std::vector<const Artifact*> list_all() const;
    std::vector<const Artifact*> list_turn(int turn_index) const;
    std::size_t size() const;

    CoverageDecision find_covering(const EvidenceRequest& request) const;

private:
    std::string dialog_id_;
    bool enabled_;
    mutable std::shared_mutex mu_;
    std::deque<Artifact> artifacts_;
    std::map<std::string, std::size_t> index_;
    std::set<std::string> known_calls_;
    std::size_t id_counter_ = 0;
};

} // namespace assetops
