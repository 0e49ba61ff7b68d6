#include "assetops/eval/report.hpp"

#include <future>

#include "assetops/core/table.hpp"

namespace assetops {

namespace {

Json opt(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::optional<double> opt_from(const Json& j, const char* key) {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    return j[key].get<double>();
}

std::optional<double> ratio(std::size_t num, std::size_t den) {
    if (den == 0) return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(den);
}

std::string cell(const std::optional<double>& v) { return v ? fixed(*v, 4) : "n/a"; }

std::string delta(const std::optional<double>& a, const std::optional<double>& b) {
    if (!a || !b) return "n/a";
    const double d = *a - *b;
    return (d > 0 ? "+" : "") + fixed(d, 4);
}

std::string category_label(const std::string& key) {
    try {
        return std::string(display_name(category_from_string(key)));
    } catch (const std::exception&) {
        return key;
    }
}

} // namespace

Json ObjectiveMetrics::to_json() const {
    return Json{{"calls", calls},
                {"valid_names", valid_names},
                {"schema_ok", schema_ok},
                {"executed_ok", executed_ok},
                {"dispatched", dispatched},
                {"tool_name_validity", opt(tool_name_validity)},
                {"schema_compliance", opt(schema_compliance)},
                {"execution_success", opt(execution_success)}};
}

ObjectiveMetrics eval_objective(const std::vector<StandardizedDialog>& dialogs, const ObjectiveOptions& options) {
    ObjectiveMetrics m;
    for (const auto& d : dialogs)
        for (const auto& t : d.turns)
            for (const auto& c : t.tool_calls) {
                ++m.calls;
                if (c.status == ToolStatus::invalid_name) continue;
                ++m.valid_names;
                if (c.status == ToolStatus::schema_violation) continue;
                ++m.schema_ok;
                ++m.dispatched;
                if (c.status == ToolStatus::ok) ++m.executed_ok;
            }
    m.tool_name_validity = ratio(m.valid_names, m.calls);
    m.schema_compliance = ratio(m.schema_ok, m.valid_names);
    m.execution_success = ratio(m.executed_ok, options.count_undispatched ? m.calls : m.dispatched);
    return m;
}

Json RecoveryMetrics::to_json() const {
    return Json{{"dialogs_with_recovery", dialogs_with_recovery},
                {"completed", completed},
                {"recovery_success_rate", opt(recovery_success_rate)}};
}

RecoveryMetrics eval_recovery(const std::vector<StandardizedDialog>& dialogs) {
    RecoveryMetrics m;
    for (const auto& d : dialogs) {
        if (!d.has_recovery()) continue;
        ++m.dialogs_with_recovery;
        if (d.completed()) ++m.completed;
    }
    m.recovery_success_rate = ratio(m.completed, m.dialogs_with_recovery);
    return m;
}

Json SubjectiveMetrics::to_json() const {
    Json dialogs = Json::array();
    for (const auto& d : per_dialog) {
        Json j = d.scores.to_json();
        j["dialog_id"] = d.dialog_id;
        j["category"] = d.category;
        dialogs.push_back(std::move(j));
    }
    Json skip = Json::array();
    for (const auto& [id, why] : skipped) skip.push_back(Json{{"dialog_id", id}, {"reason", why}});
    Json cats = Json::object();
    for (const auto& [k, c] : per_category)
        cats[k] = Json{{"dialogs", c.dialogs},
                       {"planning_effectiveness", c.planning},
                       {"tool_usage_quality", c.tool_quality},
                       {"task_completion", c.completion}};
    return Json{{"judge", judge},
                {"planning_effectiveness", opt(planning_effectiveness)},
                {"tool_usage_quality", opt(tool_usage_quality)},
                {"task_completion", opt(task_completion)},
                {"per_dialog", dialogs},
                {"per_category", cats},
                {"skipped", skip}};
}

SubjectiveMetrics eval_subjective(const std::vector<StandardizedDialog>& dialogs, const GroundTruthSet& truths,
                                  Judge& judge) {
    SubjectiveMetrics m;
    m.judge = judge.name();
    for (const auto& d : dialogs) {
        const auto gt = truths.find(d.ground_truth_ref.value_or(d.dialog_id));
        if (gt == truths.end()) {
            m.skipped.emplace_back(d.dialog_id, "no ground truth");
            continue;
        }
        try {
            m.per_dialog.push_back(DialogScore{d.dialog_id, d.category, judge.score(d, gt->second)});
        } catch (const std::exception& e) {
            m.skipped.emplace_back(d.dialog_id, e.what());
        }
    }
    if (m.per_dialog.empty()) return m;
    double p = 0, t = 0, c = 0;
    for (const auto& d : m.per_dialog) {
        p += d.scores.planning;
        t += d.scores.tool_quality;
        c += d.scores.completion;
        auto& cat = m.per_category[d.category];
        ++cat.dialogs;
        cat.planning += d.scores.planning;
        cat.tool_quality += d.scores.tool_quality;
        cat.completion += d.scores.completion;
    }
    const double n = static_cast<double>(m.per_dialog.size());
    m.planning_effectiveness = p / n;
    m.tool_usage_quality = t / n;
    m.task_completion = c / n;
    for (auto& [k, cat] : m.per_category) {
        cat.planning /= static_cast<double>(cat.dialogs);
        cat.tool_quality /= static_cast<double>(cat.dialogs);
        cat.completion /= static_cast<double>(cat.dialogs);
    }
    return m;
}

Json EvalReport::to_json() const {
    Json errors = Json::object();
    for (const auto& [k, v] : branch_errors) errors[k] = v;
    return Json{{"label", label},
                {"dialogs", dialogs},
                {"planning_effectiveness", opt(subjective.planning_effectiveness)},
                {"tool_usage_quality", opt(subjective.tool_usage_quality)},
                {"task_completion", opt(subjective.task_completion)},
                {"tool_name_validity", opt(objective.tool_name_validity)},
                {"schema_compliance", opt(objective.schema_compliance)},
                {"execution_success", opt(objective.execution_success)},
                {"recovery_success_rate", opt(recovery.recovery_success_rate)},
                {"objective", objective.to_json()},
                {"recovery", recovery.to_json()},
                {"subjective", subjective.to_json()},
                {"branch_errors", errors}};
}

EvalReport EvalReport::from_json(const Json& j) {
    EvalReport r;
    try {
        r.label = j.at("label").get<std::string>();
        r.dialogs = j.value("dialogs", std::size_t{0});
        const Json& o = j.at("objective");
        r.objective.calls = o.value("calls", std::size_t{0});
        r.objective.valid_names = o.value("valid_names", std::size_t{0});
        r.objective.schema_ok = o.value("schema_ok", std::size_t{0});
        r.objective.executed_ok = o.value("executed_ok", std::size_t{0});
        r.objective.dispatched = o.value("dispatched", std::size_t{0});
        r.objective.tool_name_validity = opt_from(o, "tool_name_validity");
        r.objective.schema_compliance = opt_from(o, "schema_compliance");
        r.objective.execution_success = opt_from(o, "execution_success");
        const Json& rc = j.at("recovery");
        r.recovery.dialogs_with_recovery = rc.value("dialogs_with_recovery", std::size_t{0});
        r.recovery.completed = rc.value("completed", std::size_t{0});
        r.recovery.recovery_success_rate = opt_from(rc, "recovery_success_rate");
        const Json& s = j.at("subjective");
        r.subjective.judge = s.value("judge", std::string());
        r.subjective.planning_effectiveness = opt_from(s, "planning_effectiveness");
        r.subjective.tool_usage_quality = opt_from(s, "tool_usage_quality");
        r.subjective.task_completion = opt_from(s, "task_completion");
        for (const auto& d : s.value("per_dialog", Json::array()))
            r.subjective.per_dialog.push_back(DialogScore{d.at("dialog_id").get<std::string>(),
                                                          d.at("category").get<std::string>(),
                                                          JudgeScores{d.at("planning_effectiveness").get<double>(),
                                                                      d.at("tool_usage_quality").get<double>(),
                                                                      d.at("task_completion").get<double>()}});
        for (const auto& sk : s.value("skipped", Json::array()))
            r.subjective.skipped.emplace_back(sk.at("dialog_id").get<std::string>(), sk.at("reason").get<std::string>());
        const Json cats = s.value("per_category", Json::object());
        for (auto it = cats.begin(); it != cats.end(); ++it)
            r.subjective.per_category[it.key()] =
                CategoryScores{it.value().at("dialogs").get<std::size_t>(),
                               it.value().at("planning_effectiveness").get<double>(),
                               it.value().at("tool_usage_quality").get<double>(),
                               it.value().at("task_completion").get<double>()};
        const Json errs = j.value("branch_errors", Json::object());
        for (auto it = errs.begin(); it != errs.end(); ++it) r.branch_errors[it.key()] = it.value().get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed evaluation report: ") + e.what());
    }
    return r;
}

EvalReport run_pipeline(const std::vector<StandardizedDialog>& dialogs, const GroundTruthSet& truths, Judge& judge,
                        const std::string& label, const PipelineOptions& options) {
    EvalReport report;
    report.label = label;
    report.dialogs = dialogs.size();
    const auto policy = options.concurrent ? std::launch::async : std::launch::deferred;
    auto subjective = std::async(policy, [&] { return eval_subjective(dialogs, truths, judge); });
    auto objective = std::async(policy, [&] { return eval_objective(dialogs, options.objective); });
    auto recovery = std::async(policy, [&] { return eval_recovery(dialogs); });
    try {
        report.subjective = subjective.get();
    } catch (const std::exception& e) {
        report.subjective.judge = judge.name();
        report.branch_errors["subjective"] = e.what();
    }
    try {
        report.objective = objective.get();
    } catch (const std::exception& e) {
        report.branch_errors["objective"] = e.what();
    }
    try {
        report.recovery = recovery.get();
    } catch (const std::exception& e) {
        report.branch_errors["recovery"] = e.what();
    }
    return report;
}

std::string render_metrics_table(const std::vector<const EvalReport*>& reports) {
    TextTable t;
    t.title = "Evaluation results";
    t.headers = {"Architecture", "Plan. Eff.",  "Tool Qual.",  "Task Comp.",
                 "Name Val.",    "Schema Comp.", "Exec. Succ.", "Recovery SR"};
    for (const auto* r : reports)
        t.rows.push_back({r->label, cell(r->subjective.planning_effectiveness), cell(r->subjective.tool_usage_quality),
                          cell(r->subjective.task_completion), cell(r->objective.tool_name_validity),
                          cell(r->objective.schema_compliance), cell(r->objective.execution_success),
                          cell(r->recovery.recovery_success_rate)});
    return t.render();
}

std::string render_category_table(const EvalReport& a, const EvalReport& b) {
    TextTable t;
    t.title = "Per-category judge scores (delta = " + a.label + " - " + b.label + ")";
    t.headers = {"Category", "#Dialogs", b.label + " P", "T", "C", a.label + " P", "T", "C", "dP", "dT", "dC"};
    auto get = [](const EvalReport& r, const std::string& k) -> const CategoryScores* {
        auto it = r.subjective.per_category.find(k);
        return it == r.subjective.per_category.end() ? nullptr : &it->second;
    };
    for (Category c : kAllCategories) {
        const std::string key(to_string(c));
        const CategoryScores* x = get(a, key);
        const CategoryScores* y = get(b, key);
        if (!x && !y) continue;
        auto v = [](const CategoryScores* s, double CategoryScores::*f) -> std::optional<double> {
            if (!s) return std::nullopt;
            return s->*f;
        };
        const std::size_t n = x ? x->dialogs : y->dialogs;
        t.rows.push_back({category_label(key), std::to_string(n),
                          cell(v(y, &CategoryScores::planning)), cell(v(y, &CategoryScores::tool_quality)),
                          cell(v(y, &CategoryScores::completion)), cell(v(x, &CategoryScores::planning)),
                          cell(v(x, &CategoryScores::tool_quality)), cell(v(x, &CategoryScores::completion)),
                          delta(v(x, &CategoryScores::planning), v(y, &CategoryScores::planning)),
                          delta(v(x, &CategoryScores::tool_quality), v(y, &CategoryScores::tool_quality)),
                          delta(v(x, &CategoryScores::completion), v(y, &CategoryScores::completion))});
    }
    return t.render();
}

std::string render_comparison(const EvalReport& a, const EvalReport& b) {
    std::string out = render_metrics_table({&b, &a});
    TextTable d;
    d.headers = {"Delta", "Plan. Eff.",  "Tool Qual.",  "Task Comp.",
                 "Name Val.", "Schema Comp.", "Exec. Succ.", "Recovery SR"};
    d.rows.push_back({a.label + " - " + b.label,
                      delta(a.subjective.planning_effectiveness, b.subjective.planning_effectiveness),
                      delta(a.subjective.tool_usage_quality, b.subjective.tool_usage_quality),
                      delta(a.subjective.task_completion, b.subjective.task_completion),
                      delta(a.objective.tool_name_validity, b.objective.tool_name_validity),
                      delta(a.objective.schema_compliance, b.objective.schema_compliance),
                      delta(a.objective.execution_success, b.objective.execution_success),
                      delta(a.recovery.recovery_success_rate, b.recovery.recovery_success_rate)});
    out += "\n" + d.render() + "\n" + render_category_table(a, b);
    return out;
}

} // namespace assetops
