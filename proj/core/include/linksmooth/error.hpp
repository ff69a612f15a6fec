#pragma once

#include <stdexcept>
#include <string>

namespace linksmooth {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument or configuration value was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The smoother denominator vanished (only possible with lambda = 0).
class EmptyNeighborhood : public Error {
 public:
  EmptyNeighborhood() : Error("empty neighborhood: kernel weights are all zero and lambda is 0") {}
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidArgument(message);
}

}  // namespace linksmooth
