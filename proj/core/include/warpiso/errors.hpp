#pragma once

#include <stdexcept>
#include <string>

namespace warpiso {

/// Argument outside the domain an operation accepts (radius past the
/// profile's end, volume larger than the space can hold, ...).
class RangeError : public std::range_error {
 public:
  using std::range_error::range_error;
};

/// A numerical procedure did not reach its tolerance. Carries the best
/// estimate and the error actually achieved.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, double best_estimate = 0.0,
               double achieved_error = 0.0)
      : std::runtime_error(what), best_estimate_(best_estimate),
        achieved_error_(achieved_error) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double best_estimate_;
  double achieved_error_;
};

/// The requested configuration exists mathematically but is outside what
/// this library computes (abstract fibers on hypersurfaces, k >= 2 on
/// non-revolution graphs, ...).
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An object could not be constructed because its invariants fail.
class ConstructionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Precondition of an operation not met.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace warpiso
