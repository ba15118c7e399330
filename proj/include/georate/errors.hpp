#pragma once

#include <stdexcept>
#include <string>

namespace georate {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter violated its documented domain (negative variance, k = 0, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature did not reach its tolerance at maximum refinement.
class QuadratureError : public Error {
 public:
  using Error::Error;
};

/// An iterative search (bisection, k* scan) hit its iteration cap.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace georate
