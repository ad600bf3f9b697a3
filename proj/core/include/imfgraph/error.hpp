#pragma once

#include <stdexcept>
#include <string>

namespace imfgraph {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on arguments or input length was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The data make the requested computation meaningless
/// (zero variance, singular regression, all-zero distances).
class DegenerateData : public Error {
 public:
  using Error::Error;
};

/// File or parse failure at an I/O boundary.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace imfgraph
