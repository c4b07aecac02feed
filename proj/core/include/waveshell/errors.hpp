#pragma once

#include <stdexcept>
#include <string>

namespace waveshell {

/// Base class for all waveshell domain errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Geometry or field construction violated an invariant; message names the field.
class InvalidGeometry : public Error {
public:
    using Error::Error;
};

/// Shell restriction selects no lattice point.
class EmptyShell : public Error {
public:
    using Error::Error;
};

/// Strip restriction selects no lattice point.
class EmptyStrip : public Error {
public:
    using Error::Error;
};

/// Counter-example lattice too coarse for the width-1/50 frequency interval.
class ResolutionTooCoarse : public Error {
public:
    using Error::Error;
};

/// Requested frequency content falls outside the lattice range.
class RangeExceeded : public Error {
public:
    using Error::Error;
};

/// A ratio against a zero L2 norm was requested.
class ZeroData : public Error {
public:
    using Error::Error;
};

/// (q, r) pair fails the sharp sigma-admissibility relation.
class AdmissibilityError : public Error {
public:
    using Error::Error;
};

/// Estimated packet excursion exceeds half the periodized domain.
class WrapAround : public Error {
public:
    using Error::Error;
};

/// Log-log fit input contained a nonpositive sample.
class NonpositiveSample : public Error {
public:
    using Error::Error;
};

/// Monotonicity counting requires at least two samples.
class TooFewSamples : public Error {
public:
    using Error::Error;
};

/// Quadrature grid below the bandwidth-safe floor.
class QuadratureUnderResolved : public Error {
public:
    using Error::Error;
};

/// Configuration file or command line rejected; message names the offender.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace waveshell
