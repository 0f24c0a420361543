#include "causalsurv/verify.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "causalsurv/fixtures.hpp"
#include "causalsurv/generators.hpp"
#include "causalsurv/law_io.hpp"
#include "causalsurv/rng.hpp"

namespace causalsurv::verify {

namespace {

struct CaseFailure {
    std::string message;
    nlohmann::json details;
};

[[noreturn]] void fail(const std::string& message, nlohmann::json details = {}) {
    throw CaseFailure{message, std::move(details)};
}

void require(bool ok, const std::string& message, const nlohmann::json& details = {}) {
    if (!ok) fail(message, details);
}

std::uint64_t case_seed(const VerifyConfig& cfg, const char* suite, int i) {
    std::uint64_t h = 1469598103934665603ULL;
    for (const char* p = suite; *p; ++p) h = (h ^ static_cast<std::uint64_t>(*p)) * 1099511628211ULL;
    return split_seed(cfg.seed ^ h, static_cast<std::uint64_t>(i));
}

StepFn random_survival(Rng& rng, int max_jumps = 12, Tick tick_hi = 14) {
    std::set<Tick> ticks;
    const int n = rng.uniform_int(1, max_jumps);
    while (static_cast<int>(ticks.size()) < n)
        ticks.insert(static_cast<Tick>(rng.uniform_int(1, static_cast<int>(tick_hi))));
    std::vector<std::pair<Tick, double>> jumps;
    double v = 1.0;
    for (Tick t : ticks) {
        v *= rng.uniform(0.75, 0.99);
        jumps.emplace_back(t, v);
    }
    return StepFn::from_jumps(1.0, std::move(jumps));
}

StepFn random_cum_hazard(Rng& rng, Tick tau, double max_inc) {
    std::vector<std::pair<Tick, double>> inc;
    for (Tick u = 1; u <= tau; ++u) {
        if (rng.bernoulli(0.5)) inc.emplace_back(u, rng.uniform(0.0, max_inc));
    }
    return StepFn::cumulative(std::move(inc));
}

std::vector<std::string> law_labels(const FiniteLaw& law) {
    std::set<std::string> labels;
    for (const auto& atom : law.atoms) labels.insert(atom.l);
    return {labels.begin(), labels.end()};
}

nlohmann::json record_to_json(const ObservedRecord& r) {
    return {{"l", r.l}, {"a", r.a}, {"delta", r.delta}, {"x", r.x}};
}

nlohmann::json nuisance_to_json(const NuisanceSet& nuis) {
    nlohmann::json strata = nlohmann::json::array();
    for (const auto& [key, pi] : nuis.propensity) {
        strata.push_back({{"a", key.a},
                          {"l", key.l},
                          {"pi", pi},
                          {"failure_hazard", step_fn_to_json(nuis.failure_hazard_at(key.a, key.l))},
                          {"censoring_hazard", step_fn_to_json(nuis.censoring_hazard_at(key.a, key.l))}});
    }
    return {{"tau", nuis.tau}, {"strata", std::move(strata)}};
}

// tabular bounded weight on the tick grid
std::function<double(Tick)> random_weight(Rng& rng, Tick tau, double bound) {
    auto table = std::make_shared<std::map<Tick, double>>();
    for (Tick u = 1; u <= tau + 1; ++u) (*table)[u] = rng.uniform(-bound, bound);
    return [table, bound](Tick u) {
        auto it = table->find(u);
        return it == table->end() ? bound / 2.0 : it->second;
    };
}

// ---- suite case bodies ------------------------------------------------

void case_weight_identities(const VerifyConfig& cfg, int i) {
    Rng rng(case_seed(cfg, "weight-id", i));
    const StepFn k = random_survival(rng);
    const Tick x = rng.uniform_int(1, 15);
    const int delta = rng.uniform_int(0, 1);
    const Tick t = rng.uniform_int(0, 14);
    const auto details = [&] {
        return nlohmann::json{
            {"K", step_fn_to_json(k)}, {"x", x}, {"delta", delta}, {"t", t}};
    };
    const IdentityPair p1 = tail_weight_identity(x, delta, k, t);
    require(std::abs(p1.lhs - p1.rhs) <= cfg.tolerance, "tail identity sides disagree",
            details());
    const IdentityPair p2 = full_weight_identity(x, delta, k);
    require(std::abs(p2.lhs - p2.rhs) <= cfg.tolerance, "full identity sides disagree",
            details());
}

void case_roundtrip(const VerifyConfig& cfg, int i) {
    Rng rng(case_seed(cfg, "roundtrip", i));
    const StepFn k = random_survival(rng);
    const StepFn back = product_integral(hazard_from_survival(k));
    require(approx_equal(back, k, 20, cfg.tolerance), "survival round trip drifted",
            {{"K", step_fn_to_json(k)}});

    const StepFn lambda = random_cum_hazard(rng, 10, 0.6);
    const StepFn lambda_back = hazard_from_survival(product_integral(lambda));
    require(approx_equal(lambda_back, lambda, 20, cfg.tolerance), "hazard round trip drifted",
            {{"lambda", step_fn_to_json(lambda)}});
}

void case_risk_set_identity(const VerifyConfig& cfg, int i) {
    Rng rng(case_seed(cfg, "risk-set", i));
    const ObservedRecord r{"l0", rng.uniform_int(0, 1), rng.uniform_int(0, 1),
                           rng.uniform_int(1, 12)};
    for (Tick u = 1; u <= 13; ++u) {
        const int jump = count_failure(r, u) - count_failure(r, u - 1);
        require(at_risk_tie_aware(r, u) == at_risk(r, u) - jump, "risk-set identity failed",
                {{"record", record_to_json(r)}, {"u", u}});
    }
}

LawDocument mean_zero_law(const VerifyConfig& cfg, int i) {
    switch (i % 5) {
        case 0: return world_no_censoring();
        case 1: return world_uniform_censoring();
        case 2: return world_all_ties();
        case 3: return gen_scar_law(case_seed(cfg, "mz-law", i), {2, 2, 4});
        default: return gen_joint_random_law(case_seed(cfg, "mz-law", i), {2, 2, 3});
    }
}

void case_mean_zero(const VerifyConfig& cfg, int i) {
    const LawDocument doc = mean_zero_law(cfg, i);
    Rng rng(case_seed(cfg, "mz-h", i));
    const ObservedLaw obs = push_forward(doc.law);
    std::map<StratumKey, StepFn> censoring_haz, failure_haz;
    for (const auto& key : supported_strata(obs)) {
        censoring_haz[key] = censoring_cum_hazard(obs, key.a, key.l);
        failure_haz[key] = failure_cum_hazard(obs, key.a, key.l);
    }
    const auto h = random_weight(rng, doc.tau, 2.0);
    const double mc_mean = exact_mean(obs, [&](const ObservedRecord& r) {
        return censoring_residual_integral(r, h, censoring_haz.at({r.a, r.l}), {0, doc.tau});
    });
    require(std::abs(mc_mean) <= cfg.tolerance, "censoring residual mean is not zero",
            {{"law", law_to_json(doc)}, {"mean", mc_mean}});
    const double mt_mean = exact_mean(obs, [&](const ObservedRecord& r) {
        return failure_residual_integral(r, h, failure_haz.at({r.a, r.l}), {0, doc.tau});
    });
    require(std::abs(mt_mean) <= cfg.tolerance, "failure residual mean is not zero",
            {{"law", law_to_json(doc)}, {"mean", mt_mean}});
}

double latent_survival(const FiniteLaw& law, int a, const std::string& l, Tick u, bool censoring) {
    const FiniteLaw sub = condition(law, [&](const FullAtom& f) { return f.a == a && f.l == l; });
    return expectation(sub, [&](const FullAtom& f) {
        return (censoring ? f.c(a) : f.t(a)) > u ? 1.0 : 0.0;
    });
}

void case_identification(const VerifyConfig& cfg, int i) {
    const LawDocument doc = gen_scar_law(case_seed(cfg, "ident", i), {2, 2, 4});
    const ObservedLaw obs = push_forward(doc.law);
    const NuisanceSet nuis = identified_nuisance(obs, doc.tau);
    require(positivity_violations(nuis, 1e-3).empty(),
            "generated law unexpectedly violates positivity", {{"law", law_to_json(doc)}});
    for (const auto& key : supported_strata(obs)) {
        for (Tick u = 0; u <= doc.tau; ++u) {
            const double k_err =
                std::abs(nuis.censoring_survival_at(key.a, key.l).at(u) -
                         latent_survival(doc.law, key.a, key.l, u, true));
            const double h_err =
                std::abs(nuis.failure_survival_at(key.a, key.l).at(u) -
                         latent_survival(doc.law, key.a, key.l, u, false));
            require(k_err <= cfg.tolerance && h_err <= cfg.tolerance,
                    "identified curve deviates from the latent survival",
                    {{"law", law_to_json(doc)},
                     {"a", key.a},
                     {"l", key.l},
                     {"u", u},
                     {"k_err", k_err},
                     {"h_err", h_err}});
        }
    }
}

void case_ipw_unbiasedness(const VerifyConfig& cfg, int i) {
    const LawDocument doc = gen_scar_law(case_seed(cfg, "ipw", i), {2, 2, 4});
    const ObservedLaw obs = push_forward(doc.law);
    const NuisanceSet nuis = identified_nuisance(obs, doc.tau);
    std::set<int> arms;
    for (const auto& key : supported_strata(obs)) arms.insert(key.a);
    for (int a : arms) {
        for (Tick t = 0; t <= doc.tau; ++t) {
            const double mean = exact_mean(
                obs, [&](const ObservedRecord& r) { return ipw_term(r, nuis, a, t); });
            const double eta = counterfactual_survival(doc.law, a, t);
            require(std::abs(mean - eta) <= cfg.tolerance,
                    "weighted mean misses the counterfactual survival",
                    {{"law", law_to_json(doc)},
                     {"a", a},
                     {"t", t},
                     {"mean", mean},
                     {"eta", eta}});
        }
    }
}

void case_if_class_mean_zero(const VerifyConfig& cfg, int i) {
    const LawDocument doc = gen_scar_law(case_seed(cfg, "class", i), {2, 2, 4});
    const ObservedLaw obs = push_forward(doc.law);
    const NuisanceSet nuis = identified_nuisance(obs, doc.tau);
    const auto labels = law_labels(doc.law);
    Rng rng(case_seed(cfg, "class-idx", i));
    const Tick t = rng.uniform_int(1, static_cast<int>(doc.tau));
    const double eta = counterfactual_survival(doc.law, 1, t);
    for (int j = 0; j < 20; ++j) {
        const IFIndex idx =
            random_if_index(case_seed(cfg, "class-draw", i * 1000 + j), labels, doc.tau, 2.0);
        const double mean = exact_mean(obs, [&](const ObservedRecord& r) {
            return if_class_term(r, nuis, 1, t, idx, eta);
        });
        require(std::abs(mean) <= cfg.tolerance, "class element mean is not zero",
                {{"law", law_to_json(doc)}, {"t", t}, {"index_draw", j}, {"mean", mean}});
    }
}

NuisanceSet random_consistent_nuisance(Rng& rng, Tick tau) {
    NuisanceSet nuis;
    nuis.tau = tau;
    for (int a : {0, 1}) {
        const StratumKey key{a, "l0"};
        nuis.censoring_hazard[key] = random_cum_hazard(rng, tau, 0.4);
        nuis.failure_hazard[key] = random_cum_hazard(rng, tau, 0.4);
        nuis.censoring_survival[key] = product_integral(nuis.censoring_hazard[key]);
        nuis.failure_survival[key] = product_integral(nuis.failure_hazard[key]);
        nuis.propensity[key] = rng.uniform(0.1, 0.9);
    }
    return nuis;
}

void case_eif_equality(const VerifyConfig& cfg, int i) {
    Rng rng(case_seed(cfg, "eif", i));
    const Tick tau = 8;
    const NuisanceSet nuis = random_consistent_nuisance(rng, tau);
    const ObservedRecord r{"l0", rng.uniform_int(0, 1), rng.uniform_int(0, 1),
                           rng.uniform_int(1, static_cast<int>(tau))};
    const Tick t = rng.uniform_int(1, static_cast<int>(tau));
    const int a = rng.uniform_int(0, 1);
    const double eta = rng.uniform();
    const double lhs = eif_aipw_term(r, nuis, a, t, eta);
    const double rhs = eif_gcomp_term(r, nuis, a, t, eta);
    require(std::abs(lhs - rhs) <= 1e-10, "the two efficient forms disagree",
            {{"nuisance", nuisance_to_json(nuis)},
             {"record", record_to_json(r)},
             {"a", a},
             {"t", t},
             {"eta", eta},
             {"aipw", lhs},
             {"gcomp", rhs}});
}

LawDocument biconditional_law(const VerifyConfig& cfg, int i) {
    const std::uint64_t s = case_seed(cfg, "bicond-law", i);
    switch (i % 5) {
        case 0: return gen_scar_law(s, {2, 2, 3});
        case 1: return gen_joint_random_law(s, {2, 2, 3});
        case 2: return gen_car_not_scar_candidate(s, {2, 2, 3});
        case 3: return gen_scar_not_car_candidate(s, {2, 2, 3});
        default: return gen_scar_law(s, {2, 1, 4});
    }
}

void case_car_biconditional(const VerifyConfig& cfg, int i) {
    const LawDocument doc = biconditional_law(cfg, i);
    const bool by_def = car_by_definition(doc.law, cfg.tolerance);
    const bool by_char = car_characterization(doc.law, cfg.tolerance);
    require(by_def == by_char, "definition and characterization disagree",
            {{"law", law_to_json(doc)},
             {"by_definition", by_def},
             {"by_characterization", by_char}});
}

void case_efficiency(const VerifyConfig& cfg, int i) {
    const LawDocument doc = gen_scar_law(case_seed(cfg, "eff", i), {2, 2, 4});
    const ObservedLaw obs = push_forward(doc.law);
    const NuisanceSet nuis = identified_nuisance(obs, doc.tau);
    const auto labels = law_labels(doc.law);
    Rng rng(case_seed(cfg, "eff-t", i));
    const Tick t = rng.uniform_int(1, static_cast<int>(doc.tau));
    const double eta = counterfactual_survival(doc.law, 1, t);
    const double var_eif = exact_variance(
        obs, [&](const ObservedRecord& r) { return eif_aipw_term(r, nuis, 1, t, eta); });
    for (int j = 0; j < 20; ++j) {
        const IFIndex idx =
            random_if_index(case_seed(cfg, "eff-draw", i * 1000 + j), labels, doc.tau, 2.0);
        const double var_member = exact_variance(obs, [&](const ObservedRecord& r) {
            return if_class_term(r, nuis, 1, t, idx, eta);
        });
        require(var_eif <= var_member + 1e-12, "class member beats the efficient element",
                {{"law", law_to_json(doc)},
                 {"t", t},
                 {"index_draw", j},
                 {"var_eif", var_eif},
                 {"var_member", var_member}});
    }
}

void case_double_robustness(const VerifyConfig& cfg, int i) {
    const LawDocument doc = gen_scar_law(case_seed(cfg, "dr", i), {2, 2, 4});
    const ObservedLaw obs = push_forward(doc.law);
    const NuisanceSet truth = identified_nuisance(obs, doc.tau);
    Rng rng(case_seed(cfg, "dr-perturb", i));
    const Tick t = rng.uniform_int(1, static_cast<int>(doc.tau));
    std::set<int> arms;
    for (const auto& key : supported_strata(obs)) arms.insert(key.a);

    // branch A: true propensity and censoring block; failure block perturbed
    NuisanceSet wrong_h = truth;
    for (auto& [key, lt] : wrong_h.failure_hazard) {
        lt = random_cum_hazard(rng, doc.tau - 1, 0.5);
        wrong_h.failure_survival[key] = product_integral(lt);
    }
    // branch B: true failure block; censoring block and propensity perturbed
    NuisanceSet wrong_k = truth;
    for (auto& [key, lc] : wrong_k.censoring_hazard) {
        lc = random_cum_hazard(rng, doc.tau - 1, 0.5);
        wrong_k.censoring_survival[key] = product_integral(lc);
        wrong_k.propensity[key] = rng.uniform(0.05, 1.0);
    }

    for (int a : arms) {
        const double eta = counterfactual_survival(doc.law, a, t);
        const double mean_a = exact_mean(
            obs, [&](const ObservedRecord& r) { return eif_aipw_term(r, wrong_h, a, t, eta); });
        require(std::abs(mean_a) <= cfg.tolerance, "branch A mean is not zero",
                {{"law", law_to_json(doc)}, {"a", a}, {"t", t}, {"mean", mean_a}});
        const double mean_b = exact_mean(
            obs, [&](const ObservedRecord& r) { return eif_gcomp_term(r, wrong_k, a, t, eta); });
        require(std::abs(mean_b) <= cfg.tolerance, "branch B mean is not zero",
                {{"law", law_to_json(doc)}, {"a", a}, {"t", t}, {"mean", mean_b}});
    }
}

void case_restricted_class(const VerifyConfig& cfg, int i) {
    const LawDocument doc = gen_scar_law(case_seed(cfg, "restr", i), {2, 2, 4});
    const ObservedLaw obs = push_forward(doc.law);
    const NuisanceSet nuis = identified_nuisance(obs, doc.tau);
    const auto labels = law_labels(doc.law);
    Rng rng(case_seed(cfg, "restr-t", i));
    const Tick t = rng.uniform_int(1, static_cast<int>(doc.tau));
    const double eta = counterfactual_survival(doc.law, 1, t);

    // the restricted class stays mean-zero at the truth
    for (int j = 0; j < 5; ++j) {
        const IFIndex idx =
            random_if_index(case_seed(cfg, "restr-draw", i * 1000 + j), labels, doc.tau, 2.0);
        const double mean = exact_mean(obs, [&](const ObservedRecord& r) {
            return restricted_class_term(r, nuis, 1, t, idx, eta);
        });
        require(std::abs(mean) <= cfg.tolerance, "restricted element mean is not zero",
                {{"law", law_to_json(doc)}, {"t", t}, {"index_draw", j}, {"mean", mean}});

        // every restricted element is constant across off-arm records sharing
        // a covariate value: that is the linear obstruction below
        std::map<std::string, double> seen;
        for (const auto& [r, p] : obs.atoms) {
            if (r.a == 1) continue;
            const double v = restricted_class_term(r, nuis, 1, t, idx, eta);
            auto [it, fresh] = seen.emplace(r.l, v);
            require(fresh || std::abs(it->second - v) <= 1e-12,
                    "restricted element varies off-arm", {{"law", law_to_json(doc)}});
        }
    }

    // an off-arm censoring augmentation produces a profile no restricted
    // element can reproduce: it varies within an (A=0, l) cell
    IFIndex active = IFIndex::zero();
    active.h_censoring = [](Tick, int, const std::string&) { return 1.0; };
    active.bound = 1.0;
    bool varies = false;
    std::map<std::string, double> seen;
    for (const auto& [r, p] : obs.atoms) {
        if (r.a == 1) continue;
        const double v = if_class_term(r, nuis, 1, t, active, eta);
        auto [it, fresh] = seen.emplace(r.l, v);
        if (!fresh && std::abs(it->second - v) > 1e-9) varies = true;
    }
    require(varies, "off-arm augmentation failed to separate the classes",
            {{"law", law_to_json(doc)}, {"t", t}});
}

void case_tie_semantics(const VerifyConfig& cfg, int i) {
    const bool tie_world = i == 0;
    const LawDocument doc =
        tie_world ? world_all_ties() : gen_scar_law(case_seed(cfg, "tie", i), {2, 2, 4});
    const ObservedLaw obs = push_forward(doc.law);
    Rng rng(case_seed(cfg, "tie-h", i));
    const auto h = random_weight(rng, doc.tau, 2.0);

    bool mutant_deviates = false;
    for (const auto& key : supported_strata(obs)) {
        const StepFn censoring_haz = censoring_cum_hazard(obs, key.a, key.l);
        const FiniteLaw stratum = condition(
            doc.law, [&](const FullAtom& f) { return f.a == key.a && f.l == key.l; });
        const ObservedLaw stratum_obs = push_forward(stratum);

        const double tie_aware_mean = exact_mean(stratum_obs, [&](const ObservedRecord& r) {
            return censoring_residual_integral(r, h, censoring_haz, {0, doc.tau}, AtRisk::TieAware);
        });
        require(std::abs(tie_aware_mean) <= cfg.tolerance,
                "tie-aware residual mean is not zero",
                {{"law", law_to_json(doc)}, {"a", key.a}, {"l", key.l}});

        // same hazard, plain at-risk process: deviates wherever failures and
        // censorings share a tick
        const double plain_mean = exact_mean(stratum_obs, [&](const ObservedRecord& r) {
            return censoring_residual_integral(
                r, [](Tick) { return 1.0; }, censoring_haz, {0, doc.tau}, AtRisk::Plain);
        });
        if (std::abs(plain_mean) > 1e-9) mutant_deviates = true;
    }
    if (tie_world) {
        // every observation is a tie counted as failure: nothing censored,
        // both residuals vanish identically
        require(censoring_cum_hazard(obs, 1, "l0").is_zero(), "tie world grew a censoring hazard",
                {{"law", law_to_json(doc)}});
        require(at_risk_tie_aware({"l0", 1, 1, 2}, 2) == 0, "tie record still at censoring risk", {});
    } else {
        require(mutant_deviates, "plain-risk mutant stayed mean zero on a tie-bearing law",
                {{"law", law_to_json(doc)}});
    }
}

// ---- driver ------------------------------------------------------------

struct Suite {
    const char* name;
    void (*body)(const VerifyConfig&, int);
    bool law_scaled;  // cases drawn from cfg.laws instead of cfg.cases
};

constexpr Suite kSuites[] = {
    {"weight-identities", case_weight_identities, false},
    {"product-integral-roundtrip", case_roundtrip, false},
    {"risk-set-identity", case_risk_set_identity, false},
    {"mean-zero-residuals", case_mean_zero, true},
    {"identification", case_identification, true},
    {"ipw-unbiasedness", case_ipw_unbiasedness, true},
    {"if-class-mean-zero", case_if_class_mean_zero, true},
    {"eif-equality", case_eif_equality, false},
    {"car-biconditional", case_car_biconditional, true},
    {"efficiency-ordering", case_efficiency, true},
    {"double-robustness", case_double_robustness, true},
    {"restricted-class", case_restricted_class, true},
    {"tie-semantics", case_tie_semantics, true},
};

SuiteResult run_range(const Suite& suite, const VerifyConfig& cfg, int only_case) {
    SuiteResult result;
    result.name = suite.name;
    const int total = suite.law_scaled ? cfg.laws : cfg.cases;
    const auto start = std::chrono::steady_clock::now();
    const int from = only_case >= 0 ? only_case : 0;
    const int to = only_case >= 0 ? only_case + 1 : total;
    result.passed = true;
    for (int i = from; i < to; ++i) {
        try {
            suite.body(cfg, i);
            ++result.cases_run;
        } catch (const CaseFailure& f) {
            result.passed = false;
            result.message = f.message;
            result.counterexample = {{"suite", suite.name},
                                     {"seed", cfg.seed},
                                     {"case", i},
                                     {"cases", cfg.cases},
                                     {"laws", cfg.laws},
                                     {"tolerance", cfg.tolerance},
                                     {"details", f.details}};
            break;
        } catch (const std::exception& e) {
            result.passed = false;
            result.message = std::string("unexpected error: ") + e.what();
            result.counterexample = {{"suite", suite.name},
                                     {"seed", cfg.seed},
                                     {"case", i},
                                     {"cases", cfg.cases},
                                     {"laws", cfg.laws},
                                     {"tolerance", cfg.tolerance}};
            break;
        }
    }
    result.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

const Suite* find_suite(const std::string& name) {
    for (const auto& s : kSuites) {
        if (name == s.name) return &s;
    }
    return nullptr;
}

}  // namespace

IFIndex random_if_index(std::uint64_t seed, const std::vector<std::string>& labels, Tick tau,
                        double bound) {
    Rng rng(seed);
    auto treatment_table = std::make_shared<std::map<std::string, double>>();
    for (const auto& l : labels) (*treatment_table)[l] = rng.uniform(-bound, bound);
    auto censoring_table = std::make_shared<std::map<std::tuple<Tick, int, std::string>, double>>();
    for (Tick u = 1; u <= tau + 1; ++u) {
        for (int a : {0, 1}) {
            for (const auto& l : labels) (*censoring_table)[{u, a, l}] = rng.uniform(-bound, bound);
        }
    }
    IFIndex idx;
    idx.bound = bound;
    idx.h_treatment = [treatment_table](const std::string& l) {
        auto it = treatment_table->find(l);
        return it == treatment_table->end() ? 0.0 : it->second;
    };
    idx.h_censoring = [censoring_table](Tick u, int a, const std::string& l) {
        auto it = censoring_table->find({u, a, l});
        return it == censoring_table->end() ? 0.0 : it->second;
    };
    return idx;
}

std::vector<std::string> suite_names() {
    std::vector<std::string> names;
    for (const auto& s : kSuites) names.emplace_back(s.name);
    return names;
}

SuiteResult run_suite(const std::string& name, const VerifyConfig& cfg) {
    const Suite* suite = find_suite(name);
    if (!suite) throw ConfigError("unknown suite: " + name);
    return run_range(*suite, cfg, -1);
}

std::vector<SuiteResult> run_all_suites(const VerifyConfig& cfg) {
    std::vector<SuiteResult> results;
    for (const auto& s : kSuites) results.push_back(run_range(s, cfg, -1));
    return results;
}

SuiteResult replay(const nlohmann::json& payload) {
    try {
        const std::string name = payload.at("suite").get<std::string>();
        const Suite* suite = find_suite(name);
        if (!suite) throw ConfigError("unknown suite: " + name);
        VerifyConfig cfg;
        cfg.seed = payload.at("seed").get<std::uint64_t>();
        if (payload.contains("cases")) cfg.cases = payload.at("cases").get<int>();
        if (payload.contains("laws")) cfg.laws = payload.at("laws").get<int>();
        if (payload.contains("tolerance")) cfg.tolerance = payload.at("tolerance").get<double>();
        return run_range(*suite, cfg, payload.at("case").get<int>());
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("replay payload: ") + e.what());
    }
}

nlohmann::json report_to_json(const std::vector<SuiteResult>& results) {
    bool all = true;
    nlohmann::json suites = nlohmann::json::array();
    for (const auto& r : results) {
        all = all && r.passed;
        nlohmann::json j = {{"name", r.name},
                            {"passed", r.passed},
                            {"cases", r.cases_run},
                            {"seconds", r.seconds}};
        if (!r.passed) {
            j["message"] = r.message;
            j["counterexample"] = r.counterexample;
        }
        suites.push_back(std::move(j));
    }
    return {{"all_passed", all}, {"suites", std::move(suites)}};
}

}  // namespace causalsurv::verify
