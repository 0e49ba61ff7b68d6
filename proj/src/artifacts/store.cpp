#include "assetops/artifacts/store.hpp"

#include <algorithm>
#include <cstdio>
#include <mutex>

namespace assetops {

std::vector<std::string> CoverageDecision::reused_ids() const {
    std::vector<std::string> out;
    for (const auto* a : reused) out.push_back(a->artifact_id);
    return out;
}

ArtifactStore::ArtifactStore(std::string dialog_id, bool enabled)
    : dialog_id_(std::move(dialog_id)), enabled_(enabled) {}

void ArtifactStore::register_call(const std::string& call_id) {
    std::unique_lock lock(mu_);
    known_calls_.insert(call_id);
}

std::string ArtifactStore::next_id() {
    std::unique_lock lock(mu_);
    char buf[32];
    std::snprintf(buf, sizeof buf, "/art-%03zu", ++id_counter_);
    return dialog_id_ + buf;
}

std::string ArtifactStore::put(Artifact artifact) {
    std::unique_lock lock(mu_);
    if (artifact.artifact_id.empty()) throw ValidationError("artifact without id");
    if (index_.count(artifact.artifact_id)) throw ValidationError("duplicate artifact id " + artifact.artifact_id);
    if (artifact.dialog_id != dialog_id_)
        throw ValidationError("artifact of dialog " + artifact.dialog_id + " put into store of " + dialog_id_);
    if (!(artifact.confidence >= 0.0 && artifact.confidence <= 1.0))
        throw ValidationError("confidence outside [0,1]");
    if (artifact.turn_index < 1) throw ValidationError("artifact turn_index must be positive");
    for (const auto& c : artifact.invoked_tools)
        if (!known_calls_.count(c)) throw ValidationError("artifact references unknown tool call " + c);
    if (!artifact.invoked_tools.empty() && artifact.asset_id.empty())
        throw ValidationError("tool-derived artifact without asset_id");
    for (const auto& r : artifact.reused_from)
        if (!index_.count(r)) throw ValidationError("artifact reuses unknown artifact " + r);
    const std::string id = artifact.artifact_id;
    index_.emplace(id, artifacts_.size());
    artifacts_.push_back(std::move(artifact));
    return id;
}

const Artifact* ArtifactStore::get(const std::string& artifact_id) const {
    std::shared_lock lock(mu_);
    auto it = index_.find(artifact_id);
    return it == index_.end() ? nullptr : &artifacts_[it->second];
}

std::vector<const Artifact*> ArtifactStore::list_all() const {
    std::shared_lock lock(mu_);
    std::vector<const Artifact*> out;
    for (const auto& a : artifacts_) out.push_back(&a);
    return out;
}

std::vector<const Artifact*> ArtifactStore::list_turn(int turn_index) const {
    std::shared_lock lock(mu_);
    std::vector<const Artifact*> out;
    for (const auto& a : artifacts_)
        if (a.turn_index == turn_index) out.push_back(&a);
    return out;
}

std::size_t ArtifactStore::size() const {
    std::shared_lock lock(mu_);
    return artifacts_.size();
}

CoverageDecision ArtifactStore::find_covering(const EvidenceRequest& request) const {
    CoverageDecision d;
    if (!enabled_) {
        d.gaps.push_back(request);
        return d;
    }
    std::shared_lock lock(mu_);
    struct Hit {
        std::size_t pos;
        const Artifact* artifact;
        std::vector<const EvidenceSlice*> slices;
    };
    std::vector<Hit> hits;
    for (std::size_t i = 0; i < artifacts_.size(); ++i) {
        Hit h{i, &artifacts_[i], {}};
        for (const auto& s : artifacts_[i].slices) {
            if (!slice_matches(s, request)) continue;
            // A forecast over a different history window is different evidence.
            if (request.time_range && !is_range_sliceable(request.kind) && s.range != request.time_range) continue;
            h.slices.push_back(&s);
        }
        if (!h.slices.empty()) hits.push_back(std::move(h));
    }
    std::stable_sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
        return a.artifact->turn_index > b.artifact->turn_index;
    });

    if (!request.time_range) {
        if (hits.empty()) d.gaps.push_back(request);
        else {
            d.reused.push_back(hits.front().artifact);
            d.covered.push_back(*hits.front().slices.front());
            d.covered_from.push_back(hits.front().artifact->artifact_id);
        }
        return d;
    }

    const TimeRange& want = *request.time_range;
    std::vector<TimeRange> covered;
    for (const auto& h : hits) {
        // Skip artifacts that add nothing beyond what newer ones already cover.
        std::vector<TimeRange> mine;
        for (const auto* s : h.slices) mine.push_back(*s->range->intersect(want));
        bool adds = false;
        for (const auto& r : mine)
            if (!interval_subtract(r, covered).empty()) adds = true;
        if (!adds) continue;
        d.reused.push_back(h.artifact);
        for (const auto* s : h.slices) {
            const TimeRange part = *s->range->intersect(want);
            EvidenceSlice c = *s;
            c.range = part;
            c.payload = is_range_sliceable(s->kind) ? clip_payload(s->payload, part) : s->payload;
            d.covered.push_back(std::move(c));
            d.covered_from.push_back(h.artifact->artifact_id);
            covered.push_back(part);
        }
    }
    for (const auto& gap : interval_subtract(want, covered)) {
        EvidenceRequest g = request;
        g.time_range = gap;
        d.gaps.push_back(std::move(g));
    }
    return d;
}

} // namespace assetops
