#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "causalsurv/estimators.hpp"

namespace causalsurv::verify {

// bounded tabular index functions on the label/arm/tick grid, seeded
IFIndex random_if_index(std::uint64_t seed, const std::vector<std::string>& labels, Tick tau,
                        double bound);

struct VerifyConfig {
    std::uint64_t seed = 20260801;
    int cases = 500;       // fuzz-style suites
    int laws = 50;         // law-driven suites
    double tolerance = 1e-12;
    int witness_budget = 200;
};

struct SuiteResult {
    std::string name;
    bool passed = false;
    int cases_run = 0;
    double seconds = 0.0;
    std::string message;            // failure description, empty on pass
    nlohmann::json counterexample;  // replayable payload, null on pass
};

std::vector<std::string> suite_names();

SuiteResult run_suite(const std::string& name, const VerifyConfig& cfg);
std::vector<SuiteResult> run_all_suites(const VerifyConfig& cfg);

// Re-executes the single case recorded in a failure payload.
SuiteResult replay(const nlohmann::json& payload);

nlohmann::json report_to_json(const std::vector<SuiteResult>& results);

}  // namespace causalsurv::verify
