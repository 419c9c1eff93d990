#pragma once

#include <stdexcept>
#include <string>

namespace singhyp {

/// Base for all domain-specific failures raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Map parameters violate the admissibility constraints of their family.
struct InvalidParams : Error {
    using Error::Error;
};

/// Point evaluation requested exactly on a cut line of a piecewise map.
struct UndefinedAtCut : Error {
    using Error::Error;
};

/// A base orbit landed on a cut, so the fiber image is not defined.
struct OrbitHitsCut : Error {
    using Error::Error;
};

/// Too many samples had to be nudged off cut lines (more than the budget).
struct TooManyCutHits : Error {
    using Error::Error;
};

/// Two measures that must carry equal total mass do not.
struct MassMismatch : Error {
    using Error::Error;
};

/// Two grid densities live on different grids.
struct GridMismatch : Error {
    using Error::Error;
};

/// An oscillation radius outside the admissible range (0, A].
struct InvalidEpsilon : Error {
    using Error::Error;
};

/// Power iteration failed to reach the requested residual.
struct NoConvergence : Error {
    using Error::Error;
};

/// A decay series carries no usable points above the noise floor.
struct DegenerateSeries : Error {
    using Error::Error;
};

/// The orbit never entered the target ball within the horizon.
struct NotHit : Error {
    long long horizon;
    explicit NotHit(long long h)
        : Error("orbit did not enter the target ball within horizon " + std::to_string(h)),
          horizon(h) {}
};

/// A ball collected fewer orbit visits than the reliability threshold.
struct SparseBall : Error {
    using Error::Error;
};

/// Every radius of a log-law scan was dropped for missing hits.
struct AllMissing : Error {
    using Error::Error;
};

/// The orbit is too short for the requested statistic.
struct InsufficientOrbit : Error {
    using Error::Error;
};

/// Fiber derivative collapsed to zero; log-rates are undefined there.
struct DegenerateFiber : Error {
    using Error::Error;
};

/// A return map was queried on the local stable manifold (never returns).
struct OnStableManifold : Error {
    using Error::Error;
};

/// Config file is malformed or carries unknown keys.
struct ConfigError : Error {
    using Error::Error;
};

} // namespace singhyp
