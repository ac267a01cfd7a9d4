#pragma once

#include <stdexcept>
#include <string>

namespace caga {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A value lies outside its declared bounds.
class BoundsError : public Error {
public:
    using Error::Error;
};

/// Shapes or layouts that do not fit together (genome vs. specs, wrong dimension).
class StructuralError : public Error {
public:
    using Error::Error;
};

/// Invalid run or model configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// An objective produced, or was handed, a non-finite value.
class EvaluationError : public Error {
public:
    using Error::Error;
};

/// Singular stiffness matrix (mechanism).
class InstabilityError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace caga
