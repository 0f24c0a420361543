// Workbench for counterfactual survival-curve estimation over exact finite
// laws: sampling, estimation, coarsening checks, and the property suites.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "causalsurv/coarsening.hpp"
#include "causalsurv/estimators.hpp"
#include "causalsurv/generators.hpp"
#include "causalsurv/law_io.hpp"
#include "causalsurv/rng.hpp"
#include "causalsurv/verify.hpp"

namespace {

using namespace causalsurv;

constexpr int kExitOk = 0;
constexpr int kExitSuiteFailure = 1;
constexpr int kExitUsage = 2;

struct ScenarioConfig {
    std::optional<std::string> law_path;
    std::optional<GenSizes> generator_sizes;
    std::uint64_t generator_seed = 1;
    std::optional<Tick> tau;
    std::vector<Tick> t{1};
    std::vector<int> a{1};
    std::vector<Method> methods{Method::AipwOneStep};
    std::size_t n = 100;
    int replicates = 1;
    std::uint64_t seed = 1;
    double epsilon_floor = 0.01;
    double tolerance = 1e-12;
    int cases = 500;
    int laws = 50;
    int witness_budget = 200;
};

ScenarioConfig parse_config(const nlohmann::json& j) {
    ScenarioConfig cfg;
    try {
        if (j.contains("law")) {
            const auto& law = j.at("law");
            if (law.contains("path")) cfg.law_path = law.at("path").get<std::string>();
            if (law.contains("generator")) {
                const auto& gen = law.at("generator");
                GenSizes sizes;
                if (gen.contains("labels")) sizes.labels = gen.at("labels").get<int>();
                if (gen.contains("arms")) sizes.arms = gen.at("arms").get<int>();
                if (gen.contains("grid")) sizes.grid = gen.at("grid").get<int>();
                cfg.generator_sizes = sizes;
                if (gen.contains("seed")) cfg.generator_seed = gen.at("seed").get<std::uint64_t>();
            }
        }
        if (j.contains("tau")) cfg.tau = j.at("tau").get<Tick>();
        if (j.contains("t")) cfg.t = j.at("t").get<std::vector<Tick>>();
        if (j.contains("a")) cfg.a = j.at("a").get<std::vector<int>>();
        if (j.contains("methods")) {
            cfg.methods.clear();
            for (const auto& name : j.at("methods")) {
                const auto m = method_from_name(name.get<std::string>());
                if (!m) throw ConfigError("unknown method: " + name.get<std::string>());
                cfg.methods.push_back(*m);
            }
        }
        if (j.contains("n")) cfg.n = j.at("n").get<std::size_t>();
        if (j.contains("replicates")) cfg.replicates = j.at("replicates").get<int>();
        if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("epsilon_floor")) cfg.epsilon_floor = j.at("epsilon_floor").get<double>();
        if (j.contains("tolerance")) cfg.tolerance = j.at("tolerance").get<double>();
        if (j.contains("cases")) cfg.cases = j.at("cases").get<int>();
        if (j.contains("laws")) cfg.laws = j.at("laws").get<int>();
        if (j.contains("witness_budget")) cfg.witness_budget = j.at("witness_budget").get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (cfg.n < 1) throw ConfigError("config: n must be at least 1");
    if (cfg.replicates < 1) throw ConfigError("config: replicates must be at least 1");
    for (int arm : cfg.a) {
        if (arm != 0 && arm != 1) throw ConfigError("config: a entries must be 0 or 1");
    }
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    try {
        return parse_config(nlohmann::json::parse(read_file(path)));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

LawDocument resolve_law(const ScenarioConfig& cfg) {
    if (cfg.law_path) {
        LawDocument doc = load_law(*cfg.law_path);
        if (cfg.tau) doc.tau = *cfg.tau;
        return doc;
    }
    if (cfg.generator_sizes) {
        LawDocument doc = gen_scar_law(cfg.generator_seed, *cfg.generator_sizes);
        if (cfg.tau) doc.tau = *cfg.tau;
        return doc;
    }
    throw ConfigError("config: law needs either a path or a generator block");
}

void validate_times(const ScenarioConfig& cfg, Tick tau) {
    for (Tick t : cfg.t) {
        if (t < 0 || t > tau) throw ConfigError("config: requested t exceeds tau");
    }
}

void emit(const nlohmann::json& doc, const std::optional<std::string>& out_path) {
    if (out_path) {
        write_file(*out_path, doc.dump(2) + "\n");
    } else {
        std::cout << doc.dump(2) << "\n";
    }
}

int cmd_simulate(const std::string& config_path, std::optional<std::uint64_t> seed_override,
                 const std::string& out_path) {
    ScenarioConfig cfg = load_config(config_path);
    if (seed_override) cfg.seed = *seed_override;
    const LawDocument doc = resolve_law(cfg);
    validate_times(cfg, doc.tau);
    const ObservedLaw obs = push_forward(doc.law);
    if (cfg.replicates == 1) {
        save_records_csv(sample_records(obs, cfg.n, cfg.seed), out_path);
        return kExitOk;
    }
    for (int rep = 1; rep <= cfg.replicates; ++rep) {
        const auto records = sample_records(obs, cfg.n, split_seed(cfg.seed, rep));
        save_records_csv(records, out_path + "." + std::to_string(rep) + ".csv");
    }
    return kExitOk;
}

int cmd_estimate(const std::string& config_path, const std::string& csv_path,
                 const std::optional<std::string>& out_path) {
    const ScenarioConfig cfg = load_config(config_path);
    const auto sample = load_records_csv(csv_path);

    Tick tau = 0;
    for (const auto& r : sample) tau = std::max(tau, r.x);
    if (cfg.tau) tau = *cfg.tau;
    validate_times(cfg, tau);

    EstimateOptions opts;
    opts.epsilon_floor = cfg.epsilon_floor;
    opts.tau = tau;

    nlohmann::json reports = nlohmann::json::array();
    for (Method m : cfg.methods) {
        for (int a : cfg.a) {
            for (Tick t : cfg.t) reports.push_back(report_to_json(estimate(sample, m, a, t, opts)));
        }
    }

    // treated-minus-control difference whenever both arms are requested
    nlohmann::json contrasts = nlohmann::json::array();
    const bool both_arms = std::count(cfg.a.begin(), cfg.a.end(), 0) > 0 &&
                           std::count(cfg.a.begin(), cfg.a.end(), 1) > 0;
    if (both_arms) {
        for (Method m : cfg.methods) {
            for (Tick t : cfg.t) {
                nlohmann::json j = report_to_json(estimate_contrast(sample, m, t, opts));
                j.erase("a");
                j["estimand"] = "survival-difference";
                contrasts.push_back(std::move(j));
            }
        }
    }

    // fitted curves for plotting
    const NuisanceSet nuis = fit_nuisance(sample, tau);
    nlohmann::json curves = nlohmann::json::array();
    for (const auto& [key, pi] : nuis.propensity) {
        curves.push_back({{"a", key.a},
                          {"l", key.l},
                          {"pi", pi},
                          {"K", step_fn_to_json(nuis.censoring_survival_at(key.a, key.l))},
                          {"H", step_fn_to_json(nuis.failure_survival_at(key.a, key.l))}});
    }
    emit({{"reports", std::move(reports)},
          {"contrasts", std::move(contrasts)},
          {"curves", std::move(curves)}},
         out_path);
    return kExitOk;
}

int cmd_car_check(const std::string& law_path, const std::optional<std::string>& witness_mode,
                  std::uint64_t seed, int budget, double tolerance,
                  const std::optional<std::string>& out_path) {
    const LawDocument doc = load_law(law_path);
    const bool by_def = car_by_definition(doc.law, tolerance);
    const bool by_char = car_characterization(doc.law, tolerance);
    const bool scar = scar_characterization(doc.law, tolerance);

    nlohmann::json result = {{"car", by_char},
                             {"scar", scar},
                             {"car_by_definition", by_def},
                             {"routes_agree", by_def == by_char}};
    if (witness_mode) {
        const auto mode = witness_mode_from_name(*witness_mode);
        if (!mode) throw ConfigError("unknown witness mode: " + *witness_mode);
        const auto witness = search_witness(*mode, seed, budget, tolerance);
        result["witness_found"] = witness.has_value();
        result["witness"] = witness ? law_to_json(*witness) : nlohmann::json();
    }
    emit(result, out_path);
    if (by_def != by_char) {
        std::cerr << "SUITE FAILURE: definition-level and characterization-level coarsening "
                     "checks disagree\n";
        return kExitSuiteFailure;
    }
    return kExitOk;
}

int cmd_verify(const std::optional<std::string>& config_path,
               const std::optional<std::string>& replay_path,
               const std::optional<std::string>& out_path) {
    if (replay_path) {
        const nlohmann::json payload = nlohmann::json::parse(read_file(*replay_path));
        const verify::SuiteResult r = verify::replay(payload);
        const nlohmann::json report = verify::report_to_json({r});
        emit(report, out_path);
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << " (replayed case)\n";
        return r.passed ? kExitOk : kExitSuiteFailure;
    }

    verify::VerifyConfig vcfg;
    if (config_path) {
        const ScenarioConfig cfg = load_config(*config_path);
        vcfg.seed = cfg.seed;
        vcfg.cases = cfg.cases;
        vcfg.laws = cfg.laws;
        vcfg.tolerance = cfg.tolerance;
        vcfg.witness_budget = cfg.witness_budget;
    }
    const auto results = verify::run_all_suites(vcfg);
    bool all = true;
    for (const auto& r : results) {
        all = all && r.passed;
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.cases_run
                  << " cases, " << r.seconds << "s)";
        if (!r.passed) std::cout << " — " << r.message;
        std::cout << "\n";
    }
    emit(verify::report_to_json(results), out_path);
    return all ? kExitOk : kExitSuiteFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"causal survival workbench"};
    app.require_subcommand(1);

    std::string config_path;
    std::string csv_path;
    std::string law_path;
    std::string out_path;
    std::optional<std::uint64_t> seed_flag;
    std::optional<std::string> witness_flag;
    std::optional<std::string> replay_flag;

    auto* simulate = app.add_subcommand("simulate", "draw observed records from a law");
    simulate->add_option("--config", config_path, "scenario config JSON")->required();
    std::uint64_t seed_value = 0;
    auto* seed_opt = simulate->add_option("--seed", seed_value, "override the config seed");
    simulate->add_option("--out", out_path, "output CSV path")->required();

    auto* est = app.add_subcommand("estimate", "estimate survival from a CSV sample");
    est->add_option("--config", config_path, "scenario config JSON")->required();
    est->add_option("csv", csv_path, "observed-records CSV")->required();
    std::string est_out;
    est->add_option("--out", est_out, "report JSON path (stdout otherwise)");

    auto* car = app.add_subcommand("car-check", "coarsening checks for a law");
    car->add_option("law", law_path, "law JSON path")->required();
    std::string witness_mode;
    auto* witness_opt =
        car->add_option("--witness", witness_mode, "search mode: car-not-scar | scar-not-car");
    std::uint64_t car_seed = 11;
    car->add_option("--seed", car_seed, "witness search seed");
    int car_budget = 200;
    car->add_option("--budget", car_budget, "witness search budget");
    double car_tol = 1e-12;
    car->add_option("--tolerance", car_tol, "equality tolerance for the checks");
    std::string car_out;
    car->add_option("--out", car_out, "output JSON path (stdout otherwise)");

    auto* ver = app.add_subcommand("verify", "run the property suites");
    std::string ver_config;
    ver->add_option("--config", ver_config, "scenario config JSON");
    std::string ver_replay;
    ver->add_option("--replay", ver_replay, "replay a failure payload JSON");
    std::string ver_out;
    ver->add_option("--out", ver_out, "report JSON path (stdout otherwise)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (simulate->parsed()) {
            if (seed_opt->count() > 0) seed_flag = seed_value;
            return cmd_simulate(config_path, seed_flag, out_path);
        }
        if (est->parsed()) {
            return cmd_estimate(config_path, csv_path,
                                est_out.empty() ? std::nullopt
                                                : std::optional<std::string>(est_out));
        }
        if (car->parsed()) {
            if (witness_opt->count() > 0) witness_flag = witness_mode;
            return cmd_car_check(law_path, witness_flag, car_seed, car_budget, car_tol,
                                 car_out.empty() ? std::nullopt
                                                 : std::optional<std::string>(car_out));
        }
        if (ver->parsed()) {
            if (!ver_replay.empty()) replay_flag = ver_replay;
            return cmd_verify(ver_config.empty() ? std::nullopt
                                                 : std::optional<std::string>(ver_config),
                              replay_flag,
                              ver_out.empty() ? std::nullopt
                                              : std::optional<std::string>(ver_out));
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const EmptyStratumError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSuiteFailure;
    }
    return kExitUsage;
}
