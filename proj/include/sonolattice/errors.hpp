#pragma once

#include <stdexcept>
#include <string>

namespace sono {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A physical or numerical parameter is outside its valid range.
struct InvalidParameter : Error {
    using Error::Error;
};

/// Vector/matrix sizes are inconsistent with the configured dimension.
struct DimensionMismatch : Error {
    using Error::Error;
};

/// The wavevectors do not form a basis (singular K).
struct DegenerateBasis : Error {
    using Error::Error;
};

/// Wavevector columns have different lengths beyond tolerance.
struct UnequalWavenumbers : Error {
    using Error::Error;
};

}  // namespace sono
