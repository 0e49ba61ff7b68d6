#include "assetops/app/suite.hpp"

#include <fstream>
#include <set>

namespace assetops {

std::map<Category, int> BenchmarkSuite::counts() const {
    std::map<Category, int> out;
    for (const auto& d : dialogs) ++out[d.category];
    return out;
}

void BenchmarkSuite::validate() const {
    std::set<std::string> ids;
    if (dialogs.empty()) throw ConfigError("suite " + name + " has no dialogs");
    for (const auto& d : dialogs) {
        if (d.dialog_id.empty()) throw ConfigError("dialog without id in suite " + name);
        if (!ids.insert(d.dialog_id).second) throw ConfigError("duplicate dialog id " + d.dialog_id);
        if (d.turns.empty()) throw ConfigError("dialog " + d.dialog_id + " has no turns");
        for (const auto& t : d.turns)
            if (t.empty()) throw ConfigError("dialog " + d.dialog_id + " has an empty turn");
    }
}

Json BenchmarkSuite::to_json() const {
    Json ds = Json::array();
    for (const auto& d : dialogs)
        ds.push_back(Json{{"dialog_id", d.dialog_id}, {"category", to_string(d.category)}, {"turns", d.turns}});
    return Json{{"name", name}, {"dialogs", ds}};
}

BenchmarkSuite BenchmarkSuite::from_json(const Json& j) {
    BenchmarkSuite s;
    try {
        s.name = j.value("name", "custom");
        for (const auto& d : j.at("dialogs"))
            s.dialogs.push_back(DialogScript{d.at("dialog_id").get<std::string>(),
                                             category_from_string(d.at("category").get<std::string>()),
                                             d.at("turns").get<std::vector<std::string>>()});
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed suite: ") + e.what());
    } catch (const ValidationError& e) {
        throw ConfigError(std::string("malformed suite: ") + e.what());
    }
    s.validate();
    return s;
}

BenchmarkSuite BenchmarkSuite::load(const std::string& name_or_path) {
    if (name_or_path == "default") return default_suite();
    std::ifstream in(name_or_path);
    if (!in) throw ConfigError("cannot open suite " + name_or_path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("suite " + name_or_path + ": " + e.what());
    }
    return from_json(j);
}

const BenchmarkSuite& default_suite() {
    using C = Category;
    static const BenchmarkSuite suite = [] {
        BenchmarkSuite s;
        s.name = "default";
        s.dialogs = {
            {"D01", C::fault_diagnosis,
             {"Is chiller CH-01 overheating this week?",
              "What failure mode explains the deviation on the same chiller?",
              "Show me the anomaly scores for that chiller again.",
              "Why did its supply temperature spike?",
              "What maintenance should we schedule for it?"}},
            {"D02", C::fault_diagnosis,
             {"Chiller CH-02 raised an alarm this week, can you diagnose it?",
              "Is the deviation still visible on the same chiller over the last 3 days?",
              "What failure code is most likely for it?",
              "Recheck the supply temperature on that chiller.",
              "Give me the root cause in one line."}},
            {"D03", C::fault_diagnosis,
             {"Why is CH-03 behaving abnormally this week?",
              "Look at the previous week for the same chiller.",
              "Now diagnose the last 14 days for it.",
              "Which failure mode has the most corroborating alarms?",
              "What maintenance action do you recommend for that chiller?"}},
            {"D04", C::fault_diagnosis,
             {"Diagnose the fault on CH-04 over the last 7 days.",
              "Is the same chiller still showing the anomaly today?",
              "What failure mode matches its alarms?",
              "Is that chiller's abnormal behavior tied to one alarm?",
              "Why is it deviating?"}},
            {"D05", C::predictive_maintenance,
             {"Forecast the power consumption of CH-02 for the next 24 hours.",
              "Will it exceed normal levels tomorrow?",
              "How high will the same chiller's power get in the next 24 hours?",
              "Are there upcoming failure risks for it?",
              "Plan maintenance for it based on that forecast."}},
            {"D06", C::predictive_maintenance,
             {"Predict whether CH-06 is going to fail in the next 7 days.",
              "How confident is that forecast for the same chiller?",
              "Will it need attention next week?",
              "What failure mode is emerging on that chiller?",
              "Forecast its power again for next week."}},
            {"D07", C::comparative_analysis,
             {"Compare CH-01 and CH-03 supply temperature this week.",
              "Which of the two had the larger deviation?",
              "Compare both chillers over the last 10 days.",
              "Which of them deviated more over that period?",
              "Summarize the comparison for both."}},
            {"D08", C::maintenance_planning,
             {"What maintenance should be scheduled for CH-05?",
              "Show the work order history for the same chiller.",
              "Does the maintenance plan change if we include its recent alerts?",
              "What maintenance action addresses the top failure mode for it?",
              "Schedule maintenance for that chiller this week."}},
            {"D09", C::maintenance_planning,
             {"Plan maintenance for CH-03 based on recent alerts.",
              "Which work orders were corrective on the same chiller?",
              "Is the anomaly still present on it today?",
              "Update the maintenance plan for that chiller.",
              "What maintenance should follow after that?"}},
            {"D10", C::maintenance_planning,
             {"Create a maintenance plan for CH-06 for this week.",
              "What failure mode drives the plan for the same chiller?",
              "List the work orders for it.",
              "Schedule maintenance based on that.",
              "Which maintenance action comes first for that chiller?"}},
            {"D11", C::operational_monitoring,
             {"Give me an overview of how CH-01 is operating this week.",
              "How is the same chiller doing today?",
              "Show the temperature trend for it over the last 3 days.",
              "Is it running normally now?",
              "Give me a status summary for that chiller."}},
            {"D12", C::operational_monitoring,
             {"How is CH-04 operating this week?",
              "Monitor the same chiller over the last 3 days.",
              "How are its readings trending?",
              "Give me a status overview for it today.",
              "How is it running this week?"}},
            {"D13", C::knowledge_discovery,
             {"Tell me about chiller CH-02.",
              "Which refrigerant does the same chiller use?",
              "How old is it?",
              "Describe its model and capacity.",
              "Explain where that chiller is installed."}},
            {"D14", C::system_configuration,
             {"Show the supply temperature setpoint configuration of CH-05.",
              "Show the configured threshold for the same chiller.",
              "Convert its capacity units for me.",
              "Check the setpoint against the last 3 days of data for it.",
              "Confirm the configuration of that chiller."}},
            {"D15", C::full_pipeline,
             {"Run an end-to-end assessment of CH-01 this week.",
              "Walk me through the full pipeline for the same chiller again.",
              "Explain the failure mode for it.",
              "Give me the complete assessment again for that chiller.",
              "From diagnosis to maintenance, what should we do for it?"}},
            {"D16", C::full_pipeline,
             {"Perform a full workup on CH-03 from diagnosis to maintenance.",
              "Repeat the end-to-end analysis for the same chiller.",
              "Forecast it over the next 24 hours.",
              "Run the full pipeline again for that chiller.",
              "Summarize the complete assessment for it."}},
        };
        s.validate();
        return s;
    }();
    return suite;
}

} // namespace assetops
