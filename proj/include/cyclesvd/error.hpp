#pragma once

#include <stdexcept>
#include <string>

namespace cyclesvd {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on arguments was violated (bad rank, bad period, bad range).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Input data could not be read or does not satisfy a data invariant.
class DataError : public Error {
 public:
  using Error::Error;
};

// An iterative numerical method did not converge.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, int iterations)
      : Error(what), iterations_(iterations) {}
  int iterations() const noexcept { return iterations_; }

 private:
  int iterations_;
};

}  // namespace cyclesvd
