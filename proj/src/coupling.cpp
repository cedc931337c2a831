#include "nljcm/coupling.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "nljcm/specialfn.hpp"

namespace nljcm {

void ModelParams::validate() const {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw std::invalid_argument("eta must be a positive finite number");
  }
  if (!(rabi > 0.0) || !std::isfinite(rabi)) {
    throw std::invalid_argument("rabi frequency must be a positive finite number");
  }
  if (k < 1) {
    throw std::invalid_argument("sideband order k must be >= 1");
  }
  if (n_max < 2 * k) {
    throw std::invalid_argument("n_max must be >= 2k (n_max=" + std::to_string(n_max) +
                                ", k=" + std::to_string(k) + ")");
  }
  if (!(tail_tol > 0.0 && tail_tol < 1.0)) {
    throw std::invalid_argument("tail_tol must lie in (0, 1)");
  }
}

const char* to_string(ChainClass c) {
  switch (c) {
    case ChainClass::Full: return "full";
    case ChainClass::TwoLevel: return "two-level";
    case ChainClass::Frozen: return "frozen";
  }
  return "?";
}

double ChainCoefficients::frequency() const { return std::hypot(a_coef, b_coef); }

ChainClass classify_chain(int n, int k) {
  if (n >= 2 * k) return ChainClass::Full;
  if (n >= k) return ChainClass::TwoLevel;
  return ChainClass::Frozen;
}

ChainCoefficients chain_coefficients(const ModelParams& params, int n) {
  if (n < 0 || n > params.n_max) {
    throw std::out_of_range("chain_coefficients: phonon index " + std::to_string(n) +
                            " outside [0, n_max=" + std::to_string(params.n_max) + "]");
  }
  const int k = params.k;
  const double x = params.eta * params.eta;
  const double prefactor =
      std::sqrt(2.0) * params.rabi * std::exp(-0.5 * x) * std::pow(params.eta, k);

  ChainCoefficients c;
  c.n = n;
  c.k = k;
  c.chain_class = classify_chain(n, k);
  if (n >= 2 * k) {
    c.a_coef = prefactor * std::exp(0.5 * log_factorial_ratio(n - 2 * k, n - k)) *
               laguerre(n - 2 * k, k, x);
  }
  if (n >= k) {
    c.b_coef =
        prefactor * std::exp(0.5 * log_factorial_ratio(n - k, n)) * laguerre(n - k, k, x);
  }
  return c;
}

complex i_pow(int p) {
  switch (((p % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

complex coupling_operator_element(const ModelParams& params, int row, int col) {
  if (row < 0 || col < 0 || row > params.n_max || col > params.n_max) {
    throw std::out_of_range("coupling_operator_element: Fock index outside [0, n_max]");
  }
  const int k = params.k;
  if (col != row + k) {
    return {0.0, 0.0};
  }
  const double x = params.eta * params.eta;

  // f(m) = e^{-x/2} (i eta)^k sum_j (-x)^j m! / (j! (j+k)! (m-j)!), m = row.
  // term_{j+1} / term_j = -x (m-j) / ((j+1)(j+k+1)).
  double term = 1.0;
  for (int i = 2; i <= k; ++i) {
    term /= i;
  }
  double sum = term;
  for (int j = 0; j < row; ++j) {
    const double ratio = -x * (row - j) / ((j + 1.0) * (j + k + 1.0));
    term *= ratio;
    sum += term;
    if (std::abs(ratio) < 1.0 && std::abs(term) < 1e-18 * std::abs(sum)) {
      break;
    }
  }

  // a^k |col> = sqrt(col!/row!) |row>
  double ladder = 1.0;
  for (int i = row + 1; i <= col; ++i) {
    ladder *= std::sqrt(static_cast<double>(i));
  }
  return i_pow(k) * (std::exp(-0.5 * x) * std::pow(params.eta, k) * ladder * sum);
}

}  // namespace nljcm
