#pragma once

#include <stdexcept>
#include <string>

namespace causalsurv {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// law construction / validation
struct MassError : Error { using Error::Error; };
struct DuplicateAtomError : Error { using Error::Error; };
struct InvalidAtomError : Error { using Error::Error; };

// probability queries
struct ZeroProbabilityEventError : Error { using Error::Error; };

// survival kernel
struct InvalidHazardError : Error { using Error::Error; };
struct ZeroSurvivalError : Error { using Error::Error; };
struct EmptyStratumError : Error { using Error::Error; };

// estimation
struct PositivityError : Error { using Error::Error; };

// IO / configuration
struct ParseError : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace causalsurv
