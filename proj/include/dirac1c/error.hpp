#pragma once

#include <stdexcept>
#include <string>

namespace dirac1c {

/// Base for all domain failures raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IndexError : Error { using Error::Error; };

/// Spinor has components in both chirality blocks where one was required.
struct NotChiral : Error { using Error::Error; };

/// Spinor pair fails the unit pairing (xi-bar eta-c = 1).
struct NotNormalized : Error { using Error::Error; };

/// The quadratic-null tensor u vanishes; no generating spinor exists.
struct DegenerateU : Error { using Error::Error; };

/// Operation requires a duality-tagged tensor but got an untagged one.
struct BranchUnknown : Error { using Error::Error; };

struct PreconditionViolated : Error { using Error::Error; };

/// f_xx is (numerically) zero everywhere: the field is not transversal
/// to the basis tensor u, and the elimination step is undefined.
struct NonTransversal : Error { using Error::Error; };

/// Current extraction found (j^0)^2 < 0, which no spinor field produces.
struct BranchDiscontinuity : Error {
    using Error::Error;
};

struct NonPositiveDensity : Error { using Error::Error; };

/// Time step violates the stability bound of the chosen stencil.
struct UnstableStep : Error { using Error::Error; };

/// Initial profile does not close smoothly on the periodic interval.
struct NonPeriodicInit : Error { using Error::Error; };

/// A refinement family whose errors fail to decrease; no order can be read off.
struct NonMonotoneErrors : Error { using Error::Error; };

struct ConfigError : Error { using Error::Error; };

}  // namespace dirac1c
