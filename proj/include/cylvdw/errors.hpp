#pragma once

#include <stdexcept>
#include <string>

namespace cylvdw {

/// Argument outside the documented domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Denominator vanishes (Bessel zero, resonance, guided-mode pole on the path).
class PoleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Integrand or function returned a non-finite value.
class EvaluationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A singularity sits too close to the integration contour.
class PathCollisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bracketed root search without a sign change.
class NoSignChangeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Unknown preset, bad data file, or a material that cannot be used where requested.
class MaterialError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Curve fit could not be performed on the supplied samples.
class FitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace cylvdw
