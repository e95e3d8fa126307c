#ifndef QWELL_ERRORS_HPP
#define QWELL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qwell {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Well model
class GeometryError : public Error { using Error::Error; };
class RangeError : public Error { using Error::Error; };
class OverlapError : public Error { using Error::Error; };

// Evaluation
class DomainError : public Error { using Error::Error; };
class MismatchError : public Error { using Error::Error; };
class InfiniteWallError : public DomainError { using DomainError::DomainError; };
class FiniteWallError : public DomainError { using DomainError::DomainError; };
class ConvergenceError : public Error { using Error::Error; };
class GridError : public Error { using Error::Error; };

/// Malformed or schema-violating input files.
class ConfigError : public Error { using Error::Error; };

}  // namespace qwell

#endif  // QWELL_ERRORS_HPP
