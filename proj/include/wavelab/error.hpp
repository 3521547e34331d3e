#pragma once

#include <stdexcept>
#include <string>

namespace wavelab {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation
/// (non-finite input, r <= 0 for a singular potential, q = 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition does not hold (size mismatch, insufficient
/// decay at a grid boundary, malformed input file, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed to converge or to produce what was asked.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// Fewer bound states exist on the grid than were requested.
class BoundStateCountError : public SolverError {
 public:
  BoundStateCountError(long requested, long found)
      : SolverError("requested " + std::to_string(requested) + " bound states but only " +
                    std::to_string(found) + " exist below the continuum threshold"),
        requested_(requested),
        found_(found) {}

  long requested() const { return requested_; }
  long found() const { return found_; }

 private:
  long requested_;
  long found_;
};

/// The propagated wavefunction reached the grid boundary.
class BoundaryContaminationError : public Error {
 public:
  BoundaryContaminationError(long step, double amplitude)
      : Error("boundary amplitude " + std::to_string(amplitude) + " exceeded tolerance at step " +
              std::to_string(step)),
        step_(step) {}

  long step() const { return step_; }

 private:
  long step_;
};

}  // namespace wavelab
