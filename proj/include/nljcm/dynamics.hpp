#pragma once

#include <span>
#include <vector>

#include "nljcm/coupling.hpp"
#include "nljcm/errors.hpp"

namespace nljcm {

/// Extra phonon levels kept above the smallest truncation meeting tail_tol.
inline constexpr int kTruncationMargin = 10;

/// Motional state of the center-of-mass mode at t = 0. The internal state is
/// always both ions in the ground state, |-1>.
struct InitialMotionalState {
  enum class Kind { Coherent, Fock };

  Kind kind = Kind::Coherent;
  double alpha_sq = 0.0;  ///< mean phonon number |alpha|^2 (coherent)
  int n0 = 0;             ///< phonon number (Fock)

  static InitialMotionalState coherent(double alpha_sq);
  static InitialMotionalState fock(int n0);

  void validate() const;
};

/// Phonon-number weights p(0..n_max) and the probability left above n_max.
struct PhononDistribution {
  std::vector<double> weights;
  double tail = 0.0;
};

/// Probability of phonon numbers above n for a coherent state, summed
/// directly (not as 1 - cumulative).
double poisson_tail(double alpha_sq, int n);

/// Smallest n with discarded probability below tail_tol, plus
/// kTruncationMargin, and never below 2k.
int recommended_n_max(const InitialMotionalState& state, double tail_tol, int k);

/// Coherent: p(n) = e^{-|a|^2} |a|^{2n} / n! via a log-space recursion.
/// Fock: a delta at n0. Throws TruncationError when the tail exceeds tail_tol.
PhononDistribution phonon_distribution(const InitialMotionalState& state, int n_max,
                                       double tail_tol);

/// Occupations of the three Dicke levels on a time grid.
struct PopulationTrace {
  std::vector<double> times;  ///< seconds
  std::vector<double> rho_11;
  std::vector<double> rho_00;
  std::vector<double> rho_m1m1;
  ModelParams params;
  InitialMotionalState initial;
  double tail_bound = 0.0;  ///< initial probability outside the Fock truncation

  std::size_t size() const { return times.size(); }
  const std::vector<double>& level(DickeLevel l) const;
};

/// Uniform grid of `points` samples on [0, t_max] (seconds), endpoints included.
std::vector<double> uniform_grid(double t_max, int points);

/// Closed-form populations: chain occupations weighted by p(n) and summed in
/// ascending n. Time points are split over `threads` workers; results do not
/// depend on the thread count.
PopulationTrace populations(const ModelParams& params, const InitialMotionalState& state,
                            std::span<const double> times, unsigned threads = 1);

}  // namespace nljcm
