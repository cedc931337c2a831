#pragma once

#include <vector>

#include "nljcm/dynamics.hpp"

namespace nljcm {

inline constexpr double kCollapseFraction = 0.2;
inline constexpr double kRevivalFraction = 0.5;

/// Windowed peak-to-peak amplitude of one population trace.
struct EnvelopeReport {
  DickeLevel level = DickeLevel::Mid;
  double window = 0.0;  ///< seconds
  std::vector<double> window_centers;
  std::vector<double> amplitudes;
  bool collapse_found = false;
  bool revival_found = false;
  double collapse_time = 0.0;  ///< valid when collapse_found
  double revival_time = 0.0;   ///< valid when revival_found

  /// (max - min) of the amplitudes after the first window, relative to the
  /// first window's amplitude; 0 for a flat first window.
  double contrast() const;
};

/// Splits the trace into non-overlapping windows of length `window` starting
/// at the first sample. A collapse is the first window (after the first)
/// whose amplitude drops below kCollapseFraction of the first window's; a
/// revival is the first window after the collapse rising above
/// kRevivalFraction of it.
///
/// Throws InsufficientDataError when fewer than three full windows fit or a
/// window holds fewer than two samples.
EnvelopeReport envelope(const PopulationTrace& trace, DickeLevel which, double window);

/// 2 pi / sqrt(A^2 + B^2) at the chain n_bar.
double rabi_period(const ModelParams& params, int n_bar);

/// 2 pi / |Delta| with Delta = w(n_bar+1) - w(n_bar), w(n) = sqrt(A(n)^2 + B(n)^2).
double first_order_revival_time(const ModelParams& params, int n_bar);

}  // namespace nljcm
