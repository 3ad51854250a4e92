#pragma once

#include <stdexcept>
#include <string>

namespace sobolrank {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed estimation data: length mismatch, non-finite entries,
/// sample too small, unparsable CSV cell.
class InvalidInputError : public Error {
public:
  using Error::Error;
};

/// Lag or averaging window outside [1, n-1].
class LagError : public Error {
public:
  using Error::Error;
};

/// Output sample carries no variance; the Sobol index is undefined.
class DegenerateOutputError : public Error {
public:
  using Error::Error;
};

/// Model evaluation failed, e.g. a negative conditional variance.
class ModelError : public Error {
public:
  using Error::Error;
};

/// Quadrature refinements disagree beyond the requested tolerance.
class AccuracyError : public Error {
public:
  using Error::Error;
};

/// Study or command configuration violates the documented schema.
class ConfigError : public Error {
public:
  using Error::Error;
};

}  // namespace sobolrank
