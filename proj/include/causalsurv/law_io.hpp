#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "causalsurv/coarsening.hpp"
#include "causalsurv/estimators.hpp"
#include "causalsurv/finite_law.hpp"
#include "causalsurv/step_fn.hpp"

namespace causalsurv {

// {"time_unit": str, "tau": int, "atoms": [{"l","a","t0","t1","c0","c1","p"}]}
nlohmann::json law_to_json(const LawDocument& doc);
LawDocument law_from_json(const nlohmann::json& j);
LawDocument load_law(const std::string& path);
void save_law(const LawDocument& doc, const std::string& path);

// {"initial": float, "jumps": [[tick, value], ...]}
nlohmann::json step_fn_to_json(const StepFn& f);
StepFn step_fn_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const EstimateReport& r);

// CSV with header "l,a,delta,x"; parse errors carry 1-based line numbers.
std::string records_to_csv(const std::vector<ObservedRecord>& records);
std::vector<ObservedRecord> records_from_csv(const std::string& text);
std::vector<ObservedRecord> load_records_csv(const std::string& path);
void save_records_csv(const std::vector<ObservedRecord>& records, const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace causalsurv
