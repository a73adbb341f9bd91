#ifndef PENTAMAP_ERRORS_HPP
#define PENTAMAP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pentamap {

// Base class for everything this library throws.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Geometric input that breaks a construction (coincident points, collinear
// frames, repeated polygon vertices, ...).
struct DegenerateInput : Error {
    using Error::Error;
};

// A birational map was evaluated at an indeterminacy point. `factor` names
// the vanishing denominator factor.
struct PoleOfMap : Error {
    explicit PoleOfMap(const std::string& vanishing_factor)
        : Error("pole of map: " + vanishing_factor + " vanishes"),
          factor(vanishing_factor) {}
    std::string factor;
};

// The invariant is not defined on the coordinate axes.
struct UndefinedOnAxes : Error {
    UndefinedOnAxes() : Error("invariant undefined: xy = 0") {}
};

// Level-set operations reject the singular parameters.
struct SingularLevel : Error {
    using Error::Error;
};

struct ResolutionTooCoarse : Error {
    using Error::Error;
};

struct SeedOffCurve : Error {
    using Error::Error;
};

struct InvalidRotation : Error {
    InvalidRotation() : Error("rotation is trivial (theta = 0 mod 1)") {}
};

struct NotSymmetric : Error {
    using Error::Error;
};

struct CalibrationFailed : Error {
    using Error::Error;
};

struct NoClosure : Error {
    using Error::Error;
};

// A tolerance-based decision could not be made either way.
struct Inconclusive : Error {
    using Error::Error;
};

}  // namespace pentamap

#endif
