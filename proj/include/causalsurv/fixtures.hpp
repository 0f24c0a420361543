#pragma once

#include "causalsurv/finite_law.hpp"

namespace causalsurv {

// Small closed-form worlds shared across tests and the verification suites.

// Randomized treatment, deterministic failure at 2 (treated) / 1 (control),
// censoring far beyond the horizon; tau = 3. Nothing is ever censored.
LawDocument world_no_censoring();

// Everyone treated; failure uniform on {2,3}, censoring uniform on {1,4},
// independent; tau = 3.
LawDocument world_uniform_censoring();

// Everyone treated; failure and censoring both at 2, so every observation is
// a tie resolved to failure; tau = 2. Deliberately violates positivity.
LawDocument world_all_ties();

}  // namespace causalsurv
