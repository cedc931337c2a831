#pragma once

#include <span>

#include <Eigen/Dense>

#include "nljcm/coupling.hpp"
#include "nljcm/dynamics.hpp"

namespace nljcm {

/// Interaction Hamiltonian Omega J+ (x) F + h.c. on the full truncated space
/// {|1>,|0>,|-1>} (x) {|0>..|n_max>}, with F = f(a^+a) a^k.
///
/// Flat index of |level, n> is slot * (n_max+1) + n, where slot is 0, 1, 2
/// for the levels +1, 0, -1.
struct DenseHamiltonian {
  ModelParams params;
  Eigen::MatrixXcd elements;  ///< rad/s

  Eigen::Index dim() const { return elements.rows(); }
  Eigen::Index index(DickeLevel level, int n) const;
};

/// Dense Hamiltonian built only from coupling_operator_element. Accepts any
/// n_max >= 0 (no chain structure is assumed).
DenseHamiltonian build_hamiltonian(const ModelParams& params);

/// exp(-iHt) through one Hermitian eigendecomposition, reused for every t.
class SpectralPropagator {
 public:
  /// Throws NumericalError if the eigensolver does not converge.
  explicit SpectralPropagator(const DenseHamiltonian& h);

  const DenseHamiltonian& hamiltonian() const { return h_; }
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }

  Eigen::VectorXcd evolve_state(const Eigen::VectorXcd& psi0, double t) const;

  /// Dicke-level populations for a pure initial state (norm 1 within 1e-12).
  PopulationTrace populations(const Eigen::VectorXcd& psi0, std::span<const double> times) const;

  /// Dicke-level populations for the mixture sum_n p(n) |-1,n><-1,n|, each
  /// component evolved separately. weights.size() may not exceed n_max+1 and
  /// sum(weights) + tail must equal 1 within 1e-12.
  PopulationTrace populations(const PhononDistribution& mixture,
                              std::span<const double> times) const;

 private:
  PopulationTrace evolve_columns(const Eigen::MatrixXcd& initial_columns,
                                 std::span<const double> column_weights,
                                 std::span<const double> times) const;

  DenseHamiltonian h_;
  Eigen::MatrixXcd eigenvectors_;
  Eigen::VectorXd eigenvalues_;
};

/// One-shot helper: decompose `h` and evolve the mixture.
PopulationTrace evolve(const DenseHamiltonian& h, const PhononDistribution& mixture,
                       std::span<const double> times);

/// Closed-form trace against brute force on the same initial weights.
struct OracleComparison {
  PopulationTrace analytic;
  PopulationTrace brute_force;
  int oracle_n_max = 0;
  double max_abs_error = 0.0;  ///< over all three levels and all times
  double seconds = 0.0;        ///< wall time of the whole comparison
};

/// Runs populations() and the oracle with n_max raised by `oracle_margin`.
OracleComparison compare_to_oracle(const ModelParams& params, const InitialMotionalState& state,
                                   std::span<const double> times, int oracle_margin = 10);

}  // namespace nljcm
