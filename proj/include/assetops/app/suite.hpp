#pragma once

#include <map>
#include <string>
#include <vector>

#include "assetops/core/dialog.hpp"

namespace assetops {

struct DialogScript {
    std::string dialog_id;
    Category category = Category::fault_diagnosis;
    std::vector<std::string> turns;
};

struct BenchmarkSuite {
    std::string name;
    std::vector<DialogScript> dialogs;

    std::map<Category, int> counts() const;
    /// Throws ConfigError on duplicate ids or empty dialogs.
    void validate() const;
    Json to_json() const;
    static BenchmarkSuite from_json(const Json& j);
    /// "default" or a path to a suite JSON file.
    static BenchmarkSuite load(const std::string& name_or_path);
};

/// 16 five-turn dialogs: fault diagnosis 4, predictive maintenance 2,
/// comparative analysis 1, maintenance planning 3, operational monitoring 2,
/// knowledge discovery 1, system configuration 1, full pipeline 2. D01 is the
/// reuse-heavy dialog: turns 2 to 4 revisit turn-1 evidence on CH-01.
const BenchmarkSuite& default_suite();

} // namespace assetops
