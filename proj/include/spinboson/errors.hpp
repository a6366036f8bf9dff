#pragma once

#include <stdexcept>
#include <string>

namespace spinboson {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad arguments: negative photon number, mismatched truncation, malformed grids.
struct DomainError : Error {
    using Error::Error;
};

// Numerical guards. The CLI maps every NumericalGuard to exit status 2.
struct NumericalGuard : Error {
    using Error::Error;
};

// Fock cutoff too small: tail mass or boundary amplitude above threshold.
struct TruncationError : NumericalGuard {
    using NumericalGuard::NumericalGuard;
};

// G(t) evaluated at a pole of cot(theta_+) or tan(theta_-).
struct SingularConfiguration : NumericalGuard {
    using NumericalGuard::NumericalGuard;
};

// q(t) requested with a vanishing |a> branch.
struct DegenerateBranch : NumericalGuard {
    using NumericalGuard::NumericalGuard;
};

// |q| from rho requested with rho11 in {0, 1}.
struct UndefinedRatio : NumericalGuard {
    using NumericalGuard::NumericalGuard;
};

struct IntegratorFailure : NumericalGuard {
    using NumericalGuard::NumericalGuard;
};

} // namespace spinboson
