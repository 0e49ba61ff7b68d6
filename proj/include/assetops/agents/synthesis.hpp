#pragma once

#include <string>
#include <vector>

#include "assetops/agents/intent.hpp"
#include "assetops/agents/plan.hpp"

namespace assetops {

inline constexpr std::size_t kMaxAnswerChars = 4000;

struct SynthesisOptions {
    /// Truncate evidence lists so the answer stays within max_chars.
    bool bounded = true;
    std::size_t max_chars = kMaxAnswerChars;
};

/// Templated answer: scope line, findings per artifact, recommended action
/// when a plan exists, unresolved subtasks, then the evidence list with
/// reused records labeled. No artifacts yields a clarification request.
std::string synthesize(const Intent& intent, const std::vector<const Artifact*>& artifacts, const PlanState* state,
                       const SynthesisOptions& options = {});

/// The finding sentences for one artifact (empty when it has none).
std::vector<std::string> findings_of(const Artifact& a);

} // namespace assetops
