#include "assetops/agents/synthesis.hpp"

#include <cstdio>

#include "assetops/core/table.hpp"

namespace assetops {

namespace {

std::string scalar(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) return fixed(v.get<double>(), 2);
    return v.dump();
}

const Json* obs(const Artifact& a, const std::string& key) {
    auto it = a.observations.find(key);
    return it == a.observations.end() ? nullptr : &it->second;
}

std::string range_text(const std::optional<TimeRange>& r) {
    if (!r) return "the full record";
    return format_timestamp(r->start()) + " .. " + format_timestamp(r->end());
}

std::string label(const Artifact& a) {
    if (!a.reused()) return "[fetched]";
    return a.invoked_tools.empty() ? "[reused]" : "[reused+fetched]";
}

} // namespace

std::vector<std::string> findings_of(const Artifact& a) {
    std::vector<std::string> out;
    const std::string& id = a.asset_id;
    // Channel-keyed observations share a "<channel>.<stat>" layout.
    for (const auto& [k, v] : a.observations) {
        const auto dot = k.find(".points");
        if (dot == std::string::npos || k.find('.') != dot) continue;
        const std::string ch = k.substr(0, dot);
        const Json* mean = obs(a, ch + ".mean");
        const Json* mx = obs(a, ch + ".max");
        const Json* at = obs(a, ch + ".max_at");
        const Json* latest = obs(a, ch + ".latest");
        std::string s = id + " " + ch + ": " + scalar(v) + " hourly points";
        if (mean && mx && at)
            s += ", mean " + scalar(*mean) + ", peak " + scalar(*mx) + " at " + scalar(*at);
        if (latest) s += ", latest " + scalar(*latest);
        out.push_back(s + ".");
    }
    for (const auto& [k, v] : a.observations) {
        if (k.rfind("anomaly.", 0) != 0 || k.size() < 10 || k.substr(k.size() - 10) != ".max_score") continue;
        const std::string ch = k.substr(8, k.size() - 18);
        const Json* at = obs(a, "anomaly." + ch + ".max_score_at");
        const Json* above = obs(a, "anomaly." + ch + ".points_above_threshold");
        std::string s = id + " anomaly scores on " + ch + ": max " + scalar(v);
        if (at) s += " at " + scalar(*at);
        if (above) s += ", " + scalar(*above) + " points at or above 0.50";
        out.push_back(s + ".");
    }
    for (const auto& [k, v] : a.observations) {
        if (k.rfind("forecast.", 0) != 0 || k.size() < 8 || k.substr(k.size() - 8) != ".horizon") continue;
        const std::string ch = k.substr(9, k.size() - 17);
        const Json* first = obs(a, "forecast." + ch + ".first");
        const Json* last = obs(a, "forecast." + ch + ".last");
        const Json* end = obs(a, "forecast." + ch + ".end_at");
        std::string s = id + " " + ch + " forecast over " + scalar(v) + " h";
        if (first && last) s += ": " + scalar(*first) + " rising to " + scalar(*last);
        if (end) s += " by " + scalar(*end);
        out.push_back(s + ".");
    }
    if (const Json* n = obs(a, "alerts.count")) {
        std::string s = id + " alerts: " + scalar(*n);
        if (const Json* h = obs(a, "alerts.high")) s += ", " + scalar(*h) + " high severity";
        if (const Json* c = obs(a, "alerts.coded")) s += ", " + scalar(*c) + " carrying failure codes";
        out.push_back(s + ".");
    }
    if (const Json* n = obs(a, "work_orders.count")) {
        std::string s = id + " work orders: " + scalar(*n);
        if (const Json* c = obs(a, "work_orders.corrective")) s += ", " + scalar(*c) + " corrective";
        if (const Json* l = obs(a, "work_orders.latest")) s += ", latest " + scalar(*l);
        out.push_back(s + ".");
    }
    if (const Json* site = obs(a, "site")) {
        std::string s = id + " is installed at " + scalar(*site);
        if (const Json* m = obs(a, "model")) s += ", model " + scalar(*m);
        if (const Json* c = obs(a, "capacity_tons")) s += ", " + scalar(*c) + " tons";
        if (const Json* r = obs(a, "refrigerant")) s += ", refrigerant " + scalar(*r);
        if (const Json* y = obs(a, "install_year")) s += ", installed " + scalar(*y);
        out.push_back(s + ".");
    }
    if (a.evidence_kind == EvidenceKind::failure_codes) {
        if (const Json* code = obs(a, "top_code")) {
            std::string s = id + " likely failure mode " + scalar(*code);
            if (const Json* d = obs(a, "top_description")) s += " (" + scalar(*d) + ")";
            s += ", confidence " + fixed(a.confidence, 2);
            if (const Json* c = obs(a, "corroborating")) s += ", " + scalar(*c) + " corroborating records";
            if (const Json* w0 = obs(a, "window_start"))
                if (const Json* w1 = obs(a, "window_end"))
                    s += ", abnormal window " + scalar(*w0) + " .. " + scalar(*w1);
            out.push_back(s + ".");
        }
    }
    if (a.evidence_kind == EvidenceKind::maintenance_plan) {
        if (const Json* act = obs(a, "recommended_action")) {
            std::string s = "Recommended action for " + id;
            if (const Json* code = obs(a, "failure_code")) s += " (" + scalar(*code) + ")";
            s += ": " + scalar(*act) + ".";
            if (const Json* p = obs(a, "prior_work_order")) {
                if (scalar(*p) == "none") s += " No prior work order in the last 90 days.";
                else {
                    s += " Prior work order " + scalar(*p);
                    if (const Json* d = obs(a, "prior_work_order_date")) s += " on " + scalar(*d);
                    if (const Json* x = obs(a, "prior_work_order_action")) s += " (" + scalar(*x) + ")";
                    s += ".";
                }
            }
            out.push_back(s);
        }
    }
    return out;
}

std::string synthesize(const Intent& intent, const std::vector<const Artifact*>& artifacts, const PlanState* state,
                       const SynthesisOptions& options) {
    if (intent.needs_clarification || artifacts.empty()) {
        std::string q = intent.clarification.empty()
                            ? "I could not find evidence for that request. Which chiller should I look at (for example CH-01)?"
                            : intent.clarification;
        return q;
    }
    std::string assets;
    for (const auto& a : intent.asset_ids) assets += (assets.empty() ? "" : ", ") + a;
    std::string core = std::string(display_name(intent.category)) + " for " + assets + " over " +
                       range_text(intent.time_range) + ".\n";

    core += "\nFindings:\n";
    for (const auto* a : artifacts)
        for (const auto& f : findings_of(*a)) core += "- " + f + "\n";

    if (state) {
        std::string issues;
        for (const auto& n : state->nodes)
            if (n.status == NodeStatus::failed || (n.status == NodeStatus::pending && !n.subtask.remedial))
                issues += "- " + n.subtask.goal + ": " +
                          (n.status == NodeStatus::failed ? std::string(to_string(n.failure)) : "not reached") +
                          (n.failure_detail.empty() ? "" : " (" + n.failure_detail + ")") + "\n";
        if (state->aborted) issues += "- replanning stopped after " + std::to_string(state->revision) + " revisions\n";
        if (!issues.empty()) core += "\nUnresolved:\n" + issues;
    }

    std::vector<std::string> evidence;
    for (const auto* a : artifacts) {
        std::string line = "- " + label(*a) + " " + std::string(to_string(a->evidence_kind)) + " " + a->asset_id +
                           ", " + range_text(a->time_range) + ", " + std::to_string(a->invoked_tools.size()) +
                           " tool calls";
        if (!a->reused_from.empty()) {
            line += ", from";
            for (const auto& r : a->reused_from) line += " " + r;
        }
        if (!a->assumptions.empty()) line += "; assumes " + a->assumptions.front();
        evidence.push_back(line + "\n");
    }

    std::string out = core + "\nEvidence:\n";
    if (!options.bounded) {
        for (const auto& e : evidence) out += e;
        return out;
    }
    const std::size_t cap = options.max_chars;
    std::size_t used = 0;
    for (; used < evidence.size(); ++used) {
        const std::size_t reserve = used + 1 < evidence.size() ? 48 : 0;
        if (out.size() + evidence[used].size() + reserve > cap) break;
        out += evidence[used];
    }
    if (used < evidence.size()) {
        const std::string more = "- ... " + std::to_string(evidence.size() - used) + " more evidence records omitted\n";
        if (out.size() + more.size() <= cap) out += more;
    }
    if (out.size() > cap) {
        out.resize(cap - 4);
        out += "...\n";
    }
    return out;
}

} // namespace assetops
