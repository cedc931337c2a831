#pragma once

#include <array>

#include <Eigen/Dense>

#include "nljcm/coupling.hpp"

namespace nljcm {

/// Phase factors multiplying the off-diagonal analytic elements.
struct PhaseConvention {
  complex single_step;  ///< -i^{k+1}, on U_{1,0} and U_{0,-1}
  double double_step;   ///< (-1)^{k+1}, on U_{1,-1} = U_{-1,1}
};

PhaseConvention phase_convention(int k);

/// Time-evolution block of one chain.
///
/// Basis order is {|1,n-2k>, |0,n-k>, |-1,n>} for full chains,
/// {|0,n-k>, |-1,n>} for two-level chains and {|-1,n>} for frozen ones, so
/// the ground-state column is always the last one.
struct PropagatorBlock {
  int n = 0;
  double t = 0.0;
  ChainClass chain_class = ChainClass::Frozen;
  Eigen::MatrixXcd u;
  PhaseConvention phases{};

  Eigen::Index dim() const { return u.rows(); }

  /// <row|U|col> by Dicke label; zero if either state is outside the chain.
  complex element(DickeLevel row, DickeLevel col) const;

  /// |U_{j,-1}|^2 for j = +1, 0, -1: the occupations reached from |-1,n>.
  std::array<double, 3> ground_column_populations() const;
};

/// Closed-form block exp(-i h_n t) for the chain described by `coeffs`.
/// Throws std::invalid_argument for t < 0 and std::domain_error for a full
/// chain with A = B = 0.
PropagatorBlock chain_propagator(const ChainCoefficients& coeffs, double t);

/// Occupations (|1>, |0>, |-1>) reached from |-1,n> after time t, in the
/// squared-modulus form, without building the block.
std::array<double, 3> chain_populations(const ChainCoefficients& coeffs, double t);

}  // namespace nljcm
