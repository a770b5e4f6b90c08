#pragma once

#include <stdexcept>
#include <string>

namespace monopole {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter record violates its invariants (non-finite, wrong sign, not a half-integer).
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// m1^2 or m2^2 is negative: the sector has no real auxiliary exponent.
class NegativeRadicand : public Error {
 public:
  using Error::Error;
};

class NonNegativeEnergy : public Error {
 public:
  using Error::Error;
};

/// Some interior value of the structure function is not strictly positive.
class PositivityViolation : public Error {
 public:
  using Error::Error;
};

class OrderingViolation : public Error {
 public:
  using Error::Error;
};

/// (n+u)^2 = 1/4 for some basis state, where the diagonal part of B has a pole.
class DiagonalPole : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

/// The truncated Kummer series hits a pole (b is a non-positive integer).
class ParameterPole : public Error {
 public:
  using Error::Error;
};

/// The Jacobi index lambda - z1 - z2 is negative or not an integer.
class IndexError : public Error {
 public:
  using Error::Error;
};

/// Richardson extrapolation disagrees with the fine mesh beyond tolerance.
class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

/// The parabolic kappa scan found no sign change of the mismatch.
class NoIntersection : public Error {
 public:
  using Error::Error;
};

}  // namespace monopole
