#include <doctest.h>

#include <cmath>

#include "causalsurv/fixtures.hpp"
#include "causalsurv/generators.hpp"
#include "causalsurv/nuisance.hpp"

using namespace causalsurv;

TEST_CASE("identified nuisances of the fixture worlds") {
    const LawDocument w1 = world_no_censoring();
    const NuisanceSet n1 = identified_nuisance(push_forward(w1.law), w1.tau);
    CHECK(n1.propensity_at(1, "l0") == doctest::Approx(0.5));
    CHECK(n1.propensity_at(0, "l0") == doctest::Approx(0.5));
    for (Tick u = 0; u <= 3; ++u) CHECK(n1.censoring_survival_at(1, "l0").at(u) == doctest::Approx(1.0));
    CHECK(n1.failure_survival_at(1, "l0").at(1) == doctest::Approx(1.0));
    CHECK(n1.failure_survival_at(1, "l0").at(2) == doctest::Approx(0.0));

    const LawDocument w2 = world_uniform_censoring();
    const NuisanceSet n2 = identified_nuisance(push_forward(w2.law), w2.tau);
    CHECK(n2.propensity_at(1, "l0") == doctest::Approx(1.0));
    CHECK(n2.censoring_survival_at(1, "l0").at(1) == doctest::Approx(0.5));
    CHECK(n2.failure_survival_at(1, "l0").at(2) == doctest::Approx(0.5));

    const ObservedLaw degenerate = push_forward(make_law({{"l0", 1, 2, 2, 4, 4, 1.0}}));
    const NuisanceSet nd = identified_nuisance(degenerate, 3);
    CHECK(nd.censoring_hazard_at(1, "l0").is_zero());
    CHECK(nd.censoring_survival_at(1, "l0").at(3) == doctest::Approx(1.0));
}

TEST_CASE("fit_nuisance is the plug-in of the empirical law") {
    const std::vector<ObservedRecord> sample = {{"l0", 1, 1, 2}, {"l0", 0, 1, 1}};
    const NuisanceSet fitted = fit_nuisance(sample, 3);
    const NuisanceSet identified =
        identified_nuisance(push_forward(world_no_censoring().law), 3);
    CHECK(fitted.propensity_at(1, "l0") == identified.propensity_at(1, "l0"));
    CHECK(approx_equal(fitted.failure_survival_at(1, "l0"), identified.failure_survival_at(1, "l0"), 3, 1e-15));
    CHECK(approx_equal(fitted.censoring_survival_at(1, "l0"), identified.censoring_survival_at(1, "l0"), 3, 1e-15));

    const NuisanceSet single = fit_nuisance({{"l0", 1, 1, 2}}, 3);
    CHECK(single.propensity_at(1, "l0") == doctest::Approx(1.0));
    CHECK(single.failure_survival_at(1, "l0").at(2) == doctest::Approx(0.0));

    // a stratum that only ever censors keeps H at 1 on the observed range
    const NuisanceSet censored = fit_nuisance({{"l0", 1, 0, 1}, {"l0", 1, 0, 2}}, 3);
    CHECK(censored.failure_survival_at(1, "l0").at(3) == doctest::Approx(1.0));
    CHECK(censored.censoring_survival_at(1, "l0").at(2) == doctest::Approx(0.0));

    CHECK_THROWS_AS(fitted.propensity_at(0, "l9"), EmptyStratumError);
}

TEST_CASE("internal consistency and positivity") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const LawDocument doc = gen_scar_law(seed, {2, 2, 4});
        const NuisanceSet nuis = identified_nuisance(push_forward(doc.law), doc.tau);
        CHECK(internally_consistent(nuis, 1e-12));
        CHECK(positivity_violations(nuis, 0.01).empty());
    }

    // the all-tie world never censors, so K stays at 1 and only pi can bind
    const LawDocument w3 = world_all_ties();
    const NuisanceSet n3 = identified_nuisance(push_forward(w3.law), w3.tau);
    CHECK(positivity_violations(n3, 0.01).empty());
}

TEST_CASE("flooring restores positivity and keeps the set consistent") {
    // heavy censoring drives K(tau) to zero
    const NuisanceSet nuis = fit_nuisance({{"l0", 1, 0, 1}, {"l0", 1, 1, 2}, {"l0", 1, 0, 2}}, 3);
    CHECK_FALSE(positivity_violations(nuis, 0.01).empty());
    bool changed = false;
    const NuisanceSet floored = floor_positivity(nuis, 0.01, &changed);
    CHECK(changed);
    CHECK(positivity_violations(floored, 0.01).empty());
    CHECK(internally_consistent(floored, 1e-12));
    CHECK(floored.censoring_survival_at(1, "l0").at(3) >= 0.01);

    bool unchanged = true;
    const NuisanceSet same = floor_positivity(floored, 0.01, &unchanged);
    CHECK_FALSE(unchanged);
    CHECK(approx_equal(same.censoring_survival_at(1, "l0"), floored.censoring_survival_at(1, "l0"), 3, 0.0));
}

TEST_CASE("supported strata enumeration") {
    const auto strata = supported_strata(push_forward(world_no_censoring().law));
    REQUIRE(strata.size() == 2);
    CHECK(strata[0] == StratumKey{0, "l0"});
    CHECK(strata[1] == StratumKey{1, "l0"});
}
