#pragma once

#include <stdexcept>
#include <string>

namespace nljcm {

/// The Fock truncation discards more initial phonon probability than allowed.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, int required_n_max)
      : std::runtime_error(what), required_n_max_(required_n_max) {}

  /// Smallest n_max satisfying the tolerance, including the safety margin.
  int required_n_max() const noexcept { return required_n_max_; }

 private:
  int required_n_max_;
};

/// A numerical kernel (eigensolver) failed; results would be unreliable.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A trace is too short for the requested analysis.
class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nljcm
