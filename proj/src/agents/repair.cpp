#include "assetops/agents/repair.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

namespace assetops {

std::size_t levenshtein(std::string_view a, std::string_view b) {
    std::vector<std::size_t> row(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t up = row[j];
            row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
            diag = up;
        }
    }
    return row[b.size()];
}

namespace {

std::optional<Json> coerce_number(const Json& v, ParamType t) {
    if (!v.is_string()) return std::nullopt;
    const std::string s = v.get<std::string>();
    if (s.empty()) return std::nullopt;
    char* end = nullptr;
    if (t == ParamType::integer || t == ParamType::timestamp) {
        const long long n = std::strtoll(s.c_str(), &end, 10);
        if (*end == '\0') return Json(static_cast<std::int64_t>(n));
    } else if (t == ParamType::real) {
        const double d = std::strtod(s.c_str(), &end);
        if (*end == '\0') return Json(d);
    }
    return std::nullopt;
}

} // namespace

std::optional<ToolCall> scripted_repair(const ToolCatalog& catalog, const ToolCall& call,
                                        const std::vector<Violation>& violations) {
    ToolCall fixed = call;
    const ToolSchema* schema = catalog.resolve(call.server, call.tool);
    if (!schema) {
        std::vector<const ToolSchema*> pool;
        if (catalog.has_server(call.server)) pool = catalog.tools_of(call.server);
        else
            for (const auto& s : catalog.servers())
                for (const auto* t : catalog.tools_of(s)) pool.push_back(t);
        std::size_t best = std::numeric_limits<std::size_t>::max();
        for (const auto* t : pool) {
            const std::size_t d = levenshtein(call.tool, t->tool);
            if (d < best) best = d, schema = t;
        }
        if (!schema) return std::nullopt;
        fixed.server = schema->server;
        fixed.tool = schema->tool;
        return fixed;
    }
    if (!fixed.args.is_object()) return std::nullopt;

    bool changed = false;
    for (const auto& v : violations) {
        if (v.kind != Violation::Kind::type) continue;
        const ParamSpec* p = schema->param(v.param);
        if (!p || !fixed.args.contains(v.param)) continue;
        if (auto c = coerce_number(fixed.args[v.param], p->type)) {
            fixed.args[v.param] = *c;
            changed = true;
        }
    }
    std::vector<std::string> missing;
    for (const auto& v : violations)
        if (v.kind == Violation::Kind::missing) missing.push_back(v.param);
    for (const auto& v : violations) {
        if (v.kind != Violation::Kind::unknown || !fixed.args.contains(v.param)) continue;
        Json value = fixed.args[v.param];
        fixed.args.erase(v.param);
        changed = true;
        if (missing.empty()) continue;
        auto it = std::min_element(missing.begin(), missing.end(), [&](const std::string& a, const std::string& b) {
            return levenshtein(v.param, a) < levenshtein(v.param, b);
        });
        const ParamSpec* p = schema->param(*it);
        if (p && p->type != ParamType::string)
            if (auto c = coerce_number(value, p->type)) value = *c;
        fixed.args[*it] = value;
        missing.erase(it);
    }
    if (!changed) return std::nullopt;
    return fixed;
}

} // namespace assetops
