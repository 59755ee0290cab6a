#pragma once

#include <stdexcept>
#include <string>

namespace nearfield {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside the mathematical domain of an operation (d <= r, |lambda| <= 1/2, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation at (or numerically at) a pole of the Moebius map.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Perturbed boundary whose image is not star-shaped about the origin.
class StarShapeError : public Error {
 public:
  using Error::Error;
};

/// Linear system that is singular to working precision.
class SingularSystemError : public Error {
 public:
  using Error::Error;
};

/// Malformed geometry: coincident nodes, wrong orientation, intersecting curves.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// Data that is inconsistent with what an operation requires
/// (order shortfall, missing cluster, grid mismatch).
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace nearfield
