#pragma once

#include <stdexcept>
#include <string>

namespace ptwell {

/// Base of every error raised by the solver library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// sin(tau) vanishes, so rho(tau) = -1/sin(tau) is undefined.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Denominator of the rotated matching condition (or of a Theta curve) vanishes.
class AsymptoteError : public Error {
 public:
  using Error::Error;
};

/// The wavefunction has a node at the matching point, so psi(i*omega) = 1 is impossible.
class NodeError : public Error {
 public:
  using Error::Error;
};

class OffContourError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A zero of the quantization function sits on (or within 1e-9 of) a contour edge.
class BoundaryCrossingError : public Error {
 public:
  using Error::Error;
};

class CountMismatchError : public Error {
 public:
  using Error::Error;
};

class WindowTooSmallError : public Error {
 public:
  using Error::Error;
};

}  // namespace ptwell
