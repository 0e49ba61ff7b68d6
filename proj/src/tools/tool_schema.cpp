#include "assetops/tools/tool_schema.hpp"

#include <algorithm>
#include <set>

namespace assetops {

std::string_view to_string(ParamType t) {
    switch (t) {
    case ParamType::string: return "string";
    case ParamType::integer: return "integer";
    case ParamType::real: return "real";
    case ParamType::boolean: return "boolean";
    case ParamType::timestamp: return "timestamp";
    case ParamType::enumeration: return "enum";
    }
    return "unknown";
}

const ParamSpec* ToolSchema::param(std::string_view name) const {
    for (const auto& p : params)
        if (p.name == name) return &p;
    return nullptr;
}

Json ToolSchema::to_json() const {
    Json ps = Json::array();
    for (const auto& p : params) {
        Json pj{{"name", p.name}, {"type", to_string(p.type)}, {"required", p.required}};
        if (!p.enum_values.empty()) pj["values"] = p.enum_values;
        if (p.min) pj["min"] = *p.min;
        if (p.max) pj["max"] = *p.max;
        ps.push_back(std::move(pj));
    }
    return Json{{"server", server}, {"tool", tool}, {"description", description}, {"params", ps}};
}

ToolSchema ToolSchema::from_json(const Json& j) {
    ToolSchema s;
    s.server = j.at("server").get<std::string>();
    s.tool = j.at("tool").get<std::string>();
    s.description = j.value("description", "");
    for (const auto& pj : j.at("params")) {
        ParamSpec p;
        p.name = pj.at("name").get<std::string>();
        const auto type = pj.at("type").get<std::string>();
        if (type == "string") p.type = ParamType::string;
        else if (type == "integer") p.type = ParamType::integer;
        else if (type == "real") p.type = ParamType::real;
        else if (type == "boolean") p.type = ParamType::boolean;
        else if (type == "timestamp") p.type = ParamType::timestamp;
        else if (type == "enum") p.type = ParamType::enumeration;
        else throw ValidationError("unknown parameter type '" + type + "'");
        p.required = pj.value("required", true);
        if (pj.contains("values")) p.enum_values = pj["values"].get<std::vector<std::string>>();
        if (pj.contains("min")) p.min = pj["min"].get<std::int64_t>();
        if (pj.contains("max")) p.max = pj["max"].get<std::int64_t>();
        s.params.push_back(std::move(p));
    }
    return s;
}

std::string Violation::to_string() const {
    switch (kind) {
    case Kind::missing: return "missing:" + param;
    case Kind::type: return "type:" + param;
    case Kind::unknown: return "unknown:" + param;
    case Kind::range: return "range:" + param;
    }
    return "?:" + param;
}

void ToolCatalog::add(ToolSchema schema) {
    std::set<std::string> names;
    for (const auto& p : schema.params) {
        if (!names.insert(p.name).second)
            throw ValidationError("duplicate parameter '" + p.name + "' in " + schema.server + "." +
                                  schema.tool);
    }
    auto key = std::make_pair(schema.server, schema.tool);
    if (schemas_.count(key))
        throw ValidationError("duplicate tool " + schema.server + "." + schema.tool);
    schemas_.emplace(std::move(key), std::move(schema));
}

const ToolSchema* ToolCatalog::resolve(std::string_view server, std::string_view tool) const {
    auto it = schemas_.find(std::make_pair(std::string(server), std::string(tool)));
    return it == schemas_.end() ? nullptr : &it->second;
}

bool ToolCatalog::has_server(std::string_view server) const {
    return std::any_of(schemas_.begin(), schemas_.end(),
                       [&](const auto& kv) { return kv.first.first == server; });
}

std::vector<const ToolSchema*> ToolCatalog::tools_of(std::string_view server) const {
    std::vector<const ToolSchema*> out;
    for (const auto& [key, schema] : schemas_)
        if (key.first == server) out.push_back(&schema);
    return out;
}

std::vector<std::string> ToolCatalog::servers() const {
    std::vector<std::string> out;
    for (const auto& [key, _] : schemas_)
        if (out.empty() || out.back() != key.first) out.push_back(key.first);
    return out;
}

bool ToolCatalog::validate_name(const ToolCall& call) const {
    return resolve(call.server, call.tool) != nullptr;
}

namespace {

bool type_ok(const ParamSpec& spec, const Json& v) {
    switch (spec.type) {
    case ParamType::string: return v.is_string();
    case ParamType::integer: return v.is_number_integer();
    case ParamType::real: return v.is_number();
    case ParamType::boolean: return v.is_boolean();
    case ParamType::timestamp: return v.is_number_integer() && v.get<std::int64_t>() >= 0;
    case ParamType::enumeration:
        return v.is_string() && std::find(spec.enum_values.begin(), spec.enum_values.end(),
                                          v.get<std::string>()) != spec.enum_values.end();
    }
    return false;
}

bool bounds_ok(const ParamSpec& spec, const Json& v) {
    if (!v.is_number_integer()) return true;
    const auto x = v.get<std::int64_t>();
    return (!spec.min || x >= *spec.min) && (!spec.max || x <= *spec.max);
}

} // namespace

std::vector<Violation> ToolCatalog::validate_schema(const ToolCall& call) const {
    std::vector<Violation> out;
    const ToolSchema* schema = resolve(call.server, call.tool);
    if (!schema) return out;
    if (!call.args.is_object()) {
        for (const auto& p : schema->params)
            if (p.required) out.push_back({Violation::Kind::missing, p.name});
        return out;
    }
    for (const auto& p : schema->params) {
        auto it = call.args.find(p.name);
        if (it == call.args.end()) {
            if (p.required) out.push_back({Violation::Kind::missing, p.name});
            continue;
        }
        if (!type_ok(p, *it)) {
            out.push_back({Violation::Kind::type, p.name});
        } else if (!bounds_ok(p, *it)) {
            out.push_back({Violation::Kind::range, p.name});
        }
    }
    for (auto it = call.args.begin(); it != call.args.end(); ++it) {
        if (!schema->param(it.key())) out.push_back({Violation::Kind::unknown, it.key()});
    }
    // A start/end pair must form a non-empty range.
    const ParamSpec* start = schema->param("start");
    const ParamSpec* end = schema->param("end");
    if (start && end && start->type == ParamType::timestamp && end->type == ParamType::timestamp) {
        auto s = call.args.find("start");
        auto e = call.args.find("end");
        if (s != call.args.end() && e != call.args.end() && type_ok(*start, *s) &&
            type_ok(*end, *e) && s->get<std::int64_t>() >= e->get<std::int64_t>()) {
            out.push_back({Violation::Kind::range, "end"});
        }
    }
    return out;
}

} // namespace assetops
