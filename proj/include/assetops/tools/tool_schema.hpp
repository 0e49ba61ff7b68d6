#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "assetops/tools/tool_call.hpp"

namespace assetops {

enum class ParamType { string, integer, real, boolean, timestamp, enumeration };

std::string_view to_string(ParamType t);

struct ParamSpec {
    std::string name;
    ParamType type = ParamType::string;
    bool required = true;
    std::vector<std::string> enum_values;
    std::optional<std::int64_t> min;
    std::optional<std::int64_t> max;
};

struct ToolSchema {
    std::string server;
    std::string tool;
    std::string description;
    std::vector<ParamSpec> params;

    const ParamSpec* param(std::string_view name) const;
    Json to_json() const;
    static ToolSchema from_json(const Json& j);
};

/// One offending argument. Rendered as "<kind>:<param>", e.g. "missing:asset_id".
struct Violation {
    enum class Kind { missing, type, unknown, range };
    Kind kind;
    std::string param;

    std::string to_string() const;
    bool operator==(const Violation&) const = default;
};

/// Immutable set of tool schemas keyed by (server, tool).
class ToolCatalog {
public:
    /// Throws ValidationError on a duplicate (server, tool) pair or duplicate
    /// parameter names.
    void add(ToolSchema schema);

    const ToolSchema* resolve(std::string_view server, std::string_view tool) const;
    bool has_server(std::string_view server) const;
    std::vector<const ToolSchema*> tools_of(std::string_view server) const;
    std::vector<std::string> servers() const;
    std::size_t size() const noexcept { return schemas_.size(); }

    /// True iff (server, tool) is registered.
    bool validate_name(const ToolCall& call) const;

    /// Empty iff required params are present, no unknown params appear, and
    /// every value has exactly the declared type (no coercion). A call with an
    /// unknown name yields an empty list; check validate_name first.
    std::vector<Violation> validate_schema(const ToolCall& call) const;

private:
    std::map<std::pair<std::string, std::string>, ToolSchema, std::less<>> schemas_;
};

} // namespace assetops
