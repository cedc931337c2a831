#include "nljcm/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "nljcm/propagator.hpp"

namespace nljcm {

InitialMotionalState InitialMotionalState::coherent(double alpha_sq) {
  InitialMotionalState s;
  s.kind = Kind::Coherent;
  s.alpha_sq = alpha_sq;
  return s;
}

InitialMotionalState InitialMotionalState::fock(int n0) {
  InitialMotionalState s;
  s.kind = Kind::Fock;
  s.n0 = n0;
  return s;
}

void InitialMotionalState::validate() const {
  if (kind == Kind::Coherent) {
    if (!(alpha_sq >= 0.0) || !std::isfinite(alpha_sq)) {
      throw std::invalid_argument("coherent state needs a finite |alpha|^2 >= 0");
    }
  } else if (n0 < 0) {
    throw std::invalid_argument("Fock state phonon number must be >= 0");
  }
}

double poisson_tail(double alpha_sq, int n) {
  if (alpha_sq == 0.0) {
    return 0.0;
  }
  const double log_a = std::log(alpha_sq);
  double sum = 0.0;
  const double m_stop = alpha_sq + 60.0 * std::sqrt(alpha_sq) + 1000.0;
  for (int m = n + 1;; ++m) {
    const double term = std::exp(-alpha_sq + m * log_a - std::lgamma(m + 1.0));
    sum += term;
    if (m > alpha_sq && (term <= 1e-20 * sum || m > m_stop)) {
      break;
    }
  }
  return sum;
}

namespace {

int smallest_sufficient_n(const InitialMotionalState& state, double tail_tol) {
  if (state.kind == InitialMotionalState::Kind::Fock) {
    return state.n0;
  }
  int n = 0;
  while (poisson_tail(state.alpha_sq, n) >= tail_tol) {
    ++n;
  }
  return n;
}

}  // namespace

int recommended_n_max(const InitialMotionalState& state, double tail_tol, int k) {
  state.validate();
  return std::max(smallest_sufficient_n(state, tail_tol) + kTruncationMargin, 2 * k);
}

PhononDistribution phonon_distribution(const InitialMotionalState& state, int n_max,
                                       double tail_tol) {
  state.validate();
  if (n_max < 0) {
    throw std::invalid_argument("n_max must be >= 0");
  }
  PhononDistribution dist;
  dist.weights.assign(static_cast<std::size_t>(n_max) + 1, 0.0);

  if (state.kind == InitialMotionalState::Kind::Fock) {
    if (state.n0 > n_max) {
      throw TruncationError("Fock state n0=" + std::to_string(state.n0) +
                                " lies above n_max=" + std::to_string(n_max),
                            recommended_n_max(state, tail_tol, 0));
    }
    dist.weights[static_cast<std::size_t>(state.n0)] = 1.0;
    return dist;
  }

  const double a = state.alpha_sq;
  if (a == 0.0) {
    dist.weights[0] = 1.0;
    return dist;
  }
  const double log_a = std::log(a);
  double log_p = -a;
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) {
      log_p += log_a - std::log(static_cast<double>(n));
    }
    dist.weights[static_cast<std::size_t>(n)] = std::exp(log_p);
  }
  dist.tail = poisson_tail(a, n_max);
  if (dist.tail > tail_tol) {
    const int required = recommended_n_max(state, tail_tol, 0);
    throw TruncationError("n_max=" + std::to_string(n_max) + " discards " +
                              std::to_string(dist.tail) + " of the phonon distribution (tol " +
                              std::to_string(tail_tol) + "); use n_max >= " +
                              std::to_string(required),
                          required);
  }
  return dist;
}

const std::vector<double>& PopulationTrace::level(DickeLevel l) const {
  switch (l) {
    case DickeLevel::Up: return rho_11;
    case DickeLevel::Mid: return rho_00;
    case DickeLevel::Down: return rho_m1m1;
  }
  return rho_m1m1;
}

std::vector<double> uniform_grid(double t_max, int points) {
  if (points < 1) {
    throw std::invalid_argument("time grid needs at least one point");
  }
  if (!(t_max >= 0.0) || !std::isfinite(t_max)) {
    throw std::invalid_argument("t_max must be finite and nonnegative");
  }
  std::vector<double> grid(static_cast<std::size_t>(points), 0.0);
  for (int i = 1; i < points; ++i) {
    grid[static_cast<std::size_t>(i)] = t_max * i / (points - 1);
  }
  return grid;
}

PopulationTrace populations(const ModelParams& params, const InitialMotionalState& state,
                            std::span<const double> times, unsigned threads) {
  params.validate();
  if (times.empty()) {
    throw std::invalid_argument("time grid is empty");
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0) || !std::isfinite(times[i]) || (i > 0 && times[i] < times[i - 1])) {
      throw std::invalid_argument("times must be finite, nonnegative and nondecreasing");
    }
  }
  const PhononDistribution dist = phonon_distribution(state, params.n_max, params.tail_tol);

  struct WeightedChain {
    double weight;
    ChainCoefficients coeffs;
  };
  std::vector<WeightedChain> chains;
  for (int n = 0; n <= params.n_max; ++n) {
    const double w = dist.weights[static_cast<std::size_t>(n)];
    if (w > 0.0) {
      chains.push_back({w, chain_coefficients(params, n)});
    }
  }

  PopulationTrace trace;
  trace.times.assign(times.begin(), times.end());
  trace.rho_11.assign(times.size(), 0.0);
  trace.rho_00.assign(times.size(), 0.0);
  trace.rho_m1m1.assign(times.size(), 0.0);
  trace.params = params;
  trace.initial = state;
  trace.tail_bound = dist.tail;

  auto evaluate_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      double up = 0.0;
      double mid = 0.0;
      double down = 0.0;
      for (const auto& chain : chains) {
        const auto occ = chain_populations(chain.coeffs, times[i]);
        up += chain.weight * occ[0];
        mid += chain.weight * occ[1];
        down += chain.weight * occ[2];
      }
      trace.rho_11[i] = up;
      trace.rho_00[i] = mid;
      trace.rho_m1m1[i] = down;
    }
  };

  const std::size_t workers =
      std::clamp<std::size_t>(threads == 0 ? 1 : threads, 1, times.size());
  if (workers == 1) {
    evaluate_range(0, times.size());
    return trace;
  }
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (times.size() + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(times.size(), begin + chunk);
      if (begin < end) {
        pool.emplace_back(evaluate_range, begin, end);
      }
    }
  }  // joined here
  return trace;
}

}  // namespace nljcm
