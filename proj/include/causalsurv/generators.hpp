#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "causalsurv/finite_law.hpp"

namespace causalsurv {

// All generators emit strictly positive mass on a full product support
// (labels x arms x failure grid^2 x censoring grid^2). Failure times live on
// 1..grid-1 and censoring times on 1..grid with guaranteed mass beyond
// tau = grid-1, so the truncation and positivity assumptions hold by
// construction.
struct GenSizes {
    int labels = 2;
    int arms = 2;  // 1 collapses A to the treated arm
    int grid = 4;
};

// P(L) P(A|L) P(T0,T1|L) P(C0|A,L) P(C1|A,L) with the censoring block
// independent of the failure block given (A, L); sequentially coarsened at
// random by construction. Deterministic per seed.
LawDocument gen_scar_law(std::uint64_t seed, const GenSizes& sizes = {});

// Arbitrary positive joint masses on the product support; generically neither
// CAR nor sequentially CAR.
LawDocument gen_joint_random_law(std::uint64_t seed, const GenSizes& sizes = {});

// Censoring conditionals depend on the own-arm failure time but are constant
// below it, so the CAR characterization holds while the on-event censoring
// density differs from the censoring marginal. Candidate for CAR and not
// sequential CAR; callers confirm with the predicates.
LawDocument gen_car_not_scar_candidate(std::uint64_t seed, const GenSizes& sizes = {});

// Independent failure arms with censoring driven by the opposite arm's
// failure time. Candidate for sequential CAR and not CAR.
LawDocument gen_scar_not_car_candidate(std::uint64_t seed, const GenSizes& sizes = {});

enum class WitnessMode { CarNotScar, ScarNotCar };

std::optional<WitnessMode> witness_mode_from_name(const std::string& name);
const char* witness_mode_name(WitnessMode mode);

// Randomized search over small laws (grid <= 4, binary L) for a law realizing
// the requested CAR/SCAR combination; at most `budget` candidates are
// examined. Deterministic per seed.
std::optional<LawDocument> search_witness(WitnessMode mode, std::uint64_t seed, int budget,
                                          double tol = 1e-12);

}  // namespace causalsurv
