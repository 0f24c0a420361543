#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "causalsurv/estimators.hpp"
#include "causalsurv/fixtures.hpp"
#include "causalsurv/generators.hpp"
#include "causalsurv/rng.hpp"
#include "causalsurv/survival_kernel.hpp"

using namespace causalsurv;

namespace {

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

// conditional survival of the latent arm variables, by enumeration
double true_censoring_survival(const FiniteLaw& law, int a, const std::string& l, Tick u) {
    const FiniteLaw sub =
        condition(law, [&](const FullAtom& f) { return f.a == a && f.l == l; });
    return expectation(sub, [&](const FullAtom& f) { return f.c(a) > u ? 1.0 : 0.0; });
}

double true_failure_survival(const FiniteLaw& law, int a, const std::string& l, Tick u) {
    const FiniteLaw sub =
        condition(law, [&](const FullAtom& f) { return f.a == a && f.l == l; });
    return expectation(sub, [&](const FullAtom& f) { return f.t(a) > u ? 1.0 : 0.0; });
}

}  // namespace

TEST_CASE("tie-aware risk set drops the failure jump") {
    CHECK(at_risk_tie_aware({"l0", 1, 1, 2}, 2) == 0);  // tie world record
    CHECK(at_risk_tie_aware({"l0", 1, 0, 2}, 2) == 1);
    CHECK(at_risk_tie_aware({"l0", 1, 1, 2}, 1) == 1);

    // Y^dagger(u) = Y(u) - (N_T(u) - N_T(u-)) on a grid of records and ticks
    for (int delta : {0, 1}) {
        for (Tick x = 1; x <= 5; ++x) {
            const ObservedRecord r{"l0", 1, delta, x};
            for (Tick u = 1; u <= 6; ++u) {
                const int jump = count_failure(r, u) - count_failure(r, u - 1);
                CHECK(at_risk_tie_aware(r, u) == at_risk(r, u) - jump);
            }
        }
    }
}

TEST_CASE("stratum cumulative hazards by enumeration") {
    const ObservedLaw w2 = push_forward(world_uniform_censoring().law);
    const StepFn lt = failure_cum_hazard(w2, 1, "l0");
    CHECK(lt.increment(2) == doctest::Approx(0.5));
    CHECK(lt.increment(3) == doctest::Approx(1.0));
    CHECK(lt.increment(1) == doctest::Approx(0.0));

    const StepFn lc = censoring_cum_hazard(w2, 1, "l0");
    CHECK(lc.jump_ticks().size() == 1);
    CHECK(lc.increment(1) == doctest::Approx(0.5));

    const ObservedLaw w1 = push_forward(world_no_censoring().law);
    const StepFn lt1 = failure_cum_hazard(w1, 1, "l0");
    CHECK(lt1.jump_ticks().size() == 1);
    CHECK(lt1.increment(2) == doctest::Approx(1.0));
    CHECK(censoring_cum_hazard(w1, 1, "l0").is_zero());  // nothing censored

    const ObservedLaw w3 = push_forward(world_all_ties().law);
    CHECK(censoring_cum_hazard(w3, 1, "l0").is_zero());  // ties count as failures
}

TEST_CASE("cum_hazard empty stratum") {
    const ObservedLaw w2 = push_forward(world_uniform_censoring().law);
    CHECK_THROWS_AS(failure_cum_hazard(w2, 0, "l0"), EmptyStratumError);
    CHECK_THROWS_AS(censoring_cum_hazard(w2, 1, "nope"), EmptyStratumError);
}

TEST_CASE("product integral of a step hazard") {
    const StepFn one_jump = StepFn::cumulative({{1, 0.5}});
    const StepFn s = product_integral(one_jump);
    CHECK(s.at(0) == doctest::Approx(1.0));
    CHECK(s.at(1) == doctest::Approx(0.5));
    CHECK(s.at(9) == doctest::Approx(0.5));

    CHECK(product_integral(StepFn{}).at(5) == doctest::Approx(1.0));

    const ObservedLaw w2 = push_forward(world_uniform_censoring().law);
    const StepFn h = product_integral(failure_cum_hazard(w2, 1, "l0"));
    CHECK(h.at(2) == doctest::Approx(0.5));
    CHECK(h.at(3) == doctest::Approx(0.0));

    CHECK_THROWS_AS(product_integral(StepFn::cumulative({{1, 1.5}})), InvalidHazardError);
    CHECK_THROWS_AS(product_integral(StepFn::from_jumps(0.0, {{1, 0.5}, {2, 0.2}})),
                    InvalidHazardError);  // decreasing cumulative
}

TEST_CASE("hazard_from_survival inverts the product integral") {
    const StepFn k = StepFn::from_jumps(1.0, {{1, 0.5}});
    const StepFn lambda = hazard_from_survival(k);
    CHECK(lambda.increment(1) == doctest::Approx(0.5));

    CHECK(hazard_from_survival(StepFn::constant(1.0)).is_zero());

    const ObservedLaw w2 = push_forward(world_uniform_censoring().law);
    const StepFn kw2 = product_integral(censoring_cum_hazard(w2, 1, "l0"));
    CHECK(approx_equal(product_integral(hazard_from_survival(kw2)), kw2, 10, 1e-15));

    CHECK_THROWS_AS(hazard_from_survival(StepFn::from_jumps(1.0, {{1, 0.0}})),
                    ZeroSurvivalError);

    Rng rng(404);
    for (int i = 0; i < 200; ++i) {
        const StepFn k_rand = random_survival(rng);
        CHECK(approx_equal(product_integral(hazard_from_survival(k_rand)), k_rand, 20, 1e-12));
    }
}

TEST_CASE("survival_ratio matches value ratios away from zero") {
    Rng rng(505);
    for (int i = 0; i < 100; ++i) {
        const StepFn k = random_survival(rng);
        const StepFn lambda = hazard_from_survival(k);
        for (Tick u = 0; u <= 15; ++u) {
            for (Tick t = u; t <= 15; ++t) {
                CHECK(std::abs(survival_ratio(lambda, u, t) - k.at(t) / k.at(u)) <= 1e-12);
            }
        }
    }
}

TEST_CASE("censoring residual integral") {
    // pure counting part
    CHECK(censoring_residual_integral({"l0", 1, 0, 2}, [](Tick) { return 1.0; }, StepFn{}, {0, 5}) ==
          doctest::Approx(1.0));
    CHECK(censoring_residual_integral({"l0", 1, 0, 7}, [](Tick) { return 1.0; }, StepFn{}, {0, 5}) ==
          doctest::Approx(0.0));  // outside the domain

    const StepFn k = StepFn::from_jumps(1.0, {{1, 0.5}});
    const StepFn lambda = hazard_from_survival(k);
    const double v = censoring_residual_integral(
        {"l0", 1, 1, 2}, [&](Tick u) { return 1.0 / k.at(u); }, lambda, {0, 5});
    CHECK(v == doctest::Approx(-1.0));

    CHECK(censoring_residual_integral({"l0", 1, 0, 2}, [](Tick) { return 0.0; }, lambda, {0, 5}) ==
          doctest::Approx(0.0));
}

TEST_CASE("failure residual integral") {
    CHECK(failure_residual_integral({"l0", 1, 1, 2}, [](Tick) { return 1.0; }, StepFn{}, {0, 5}) ==
          doctest::Approx(1.0));

    const ObservedLaw w2 = push_forward(world_uniform_censoring().law);
    const StepFn lt = failure_cum_hazard(w2, 1, "l0");
    const double v = failure_residual_integral({"l0", 1, 1, 3}, [](Tick) { return 1.0; }, lt, {0, 3});
    CHECK(v == doctest::Approx(-0.5));

    CHECK(failure_residual_integral({"l0", 1, 1, 3}, [](Tick) { return 0.0; }, lt, {0, 3}) ==
          doctest::Approx(0.0));
}

TEST_CASE("tail weight identity examples") {
    const StepFn k = StepFn::from_jumps(1.0, {{1, 0.5}});
    // probe the region before the first jump via tick 0
    const IdentityPair before = tail_weight_identity(2, 1, k, 0);
    CHECK(before.lhs == doctest::Approx(1.0));
    CHECK(before.rhs == doctest::Approx(1.0));

    const IdentityPair flat = tail_weight_identity(2, 1, StepFn::constant(1.0), 1);
    CHECK(flat.lhs == doctest::Approx(1.0));
    CHECK(flat.rhs == doctest::Approx(1.0));
    const IdentityPair flat0 = tail_weight_identity(2, 0, StepFn::constant(1.0), 1);
    CHECK(flat0.lhs == doctest::Approx(1.0));
    CHECK(flat0.rhs == doctest::Approx(1.0));

    const IdentityPair past = tail_weight_identity(2, 1, k, 3);  // x <= t: both sides telescope to 0
    CHECK(past.lhs == doctest::Approx(0.0));
    CHECK(std::abs(past.rhs) <= 1e-12);
}

TEST_CASE("full weight identity examples") {
    const StepFn k = StepFn::from_jumps(1.0, {{1, 0.5}});
    const IdentityPair a = full_weight_identity(2, 1, k);
    CHECK(a.lhs == doctest::Approx(2.0));
    CHECK(a.rhs == doctest::Approx(2.0));

    const IdentityPair b = full_weight_identity(2, 1, StepFn::constant(1.0));
    CHECK(b.lhs == doctest::Approx(1.0));
    CHECK(b.rhs == doctest::Approx(1.0));

    const IdentityPair c = full_weight_identity(2, 0, StepFn::constant(1.0));
    CHECK(c.lhs == doctest::Approx(0.0));
    CHECK(c.rhs == doctest::Approx(0.0));
}

TEST_CASE("identities hold exactly for arbitrary (x, delta, t, K)") {
    Rng rng(606);
    for (int i = 0; i < 300; ++i) {
        const StepFn k = random_survival(rng);
        const Tick x = rng.uniform_int(1, 15);
        const int delta = rng.uniform_int(0, 1);
        const Tick t = rng.uniform_int(0, 14);
        const IdentityPair p1 = tail_weight_identity(x, delta, k, t);
        CHECK(std::abs(p1.lhs - p1.rhs) <= 1e-12);
        const IdentityPair p2 = full_weight_identity(x, delta, k);
        CHECK(std::abs(p2.lhs - p2.rhs) <= 1e-12);
    }
}

TEST_CASE("residuals against the identified hazards have mean zero") {
    std::vector<std::pair<LawDocument, std::string>> laws = {
        {world_no_censoring(), "w1"},
        {world_uniform_censoring(), "w2"},
        {world_all_ties(), "w3"},
    };
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        laws.emplace_back(gen_scar_law(seed, {2, 2, 4}), "scar");
        laws.emplace_back(gen_joint_random_law(seed, {2, 2, 3}), "joint");
    }

    Rng rng(707);
    for (const auto& [doc, name] : laws) {
        CAPTURE(name);
        const ObservedLaw obs = push_forward(doc.law);
        std::map<StratumKey, StepFn> censoring_haz;
        std::map<StratumKey, StepFn> failure_haz;
        for (const auto& key : supported_strata(obs)) {
            censoring_haz[key] = censoring_cum_hazard(obs, key.a, key.l);
            failure_haz[key] = failure_cum_hazard(obs, key.a, key.l);
        }
        // arbitrary bounded weight, distinct per tick
        std::map<Tick, double> h;
        for (Tick u = 1; u <= doc.tau; ++u) h[u] = rng.uniform(-2.0, 2.0);
        const auto weight = [&](Tick u) { return h.count(u) ? h.at(u) : 0.3; };

        const double mc_mean = exact_mean(obs, [&](const ObservedRecord& r) {
            return censoring_residual_integral(r, weight, censoring_haz.at({r.a, r.l}), {0, doc.tau});
        });
        CHECK(std::abs(mc_mean) <= 1e-12);

        const double mt_mean = exact_mean(obs, [&](const ObservedRecord& r) {
            return failure_residual_integral(r, weight, failure_haz.at({r.a, r.l}), {0, doc.tau});
        });
        CHECK(std::abs(mt_mean) <= 1e-12);
    }
}

TEST_CASE("identified curves recover the latent conditional survivals") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const LawDocument doc = gen_scar_law(seed, {2, 2, 4});
        const ObservedLaw obs = push_forward(doc.law);
        for (const auto& key : supported_strata(obs)) {
            const StepFn K = product_integral(censoring_cum_hazard(obs, key.a, key.l));
            const StepFn H = product_integral(failure_cum_hazard(obs, key.a, key.l));
            for (Tick u = 0; u <= doc.tau; ++u) {
                CHECK(std::abs(K.at(u) - true_censoring_survival(doc.law, key.a, key.l, u)) <=
                      1e-12);
                CHECK(std::abs(H.at(u) - true_failure_survival(doc.law, key.a, key.l, u)) <=
                      1e-12);
            }
        }
    }
}

TEST_CASE("naive risk set mis-identifies censoring under ties") {
    // shared failure/censoring mass at tick 1 in every generated stratum
    const LawDocument doc = gen_scar_law(3, {2, 2, 4});
    const ObservedLaw obs = push_forward(doc.law);
    bool some_stratum_differs = false;
    for (const auto& key : supported_strata(obs)) {
        const StepFn naive = product_integral(censoring_cum_hazard(obs, key.a, key.l, AtRisk::Plain));
        for (Tick u = 0; u <= doc.tau; ++u) {
            if (std::abs(naive.at(u) - true_censoring_survival(doc.law, key.a, key.l, u)) > 1e-9)
                some_stratum_differs = true;
        }
    }
    CHECK(some_stratum_differs);
}
