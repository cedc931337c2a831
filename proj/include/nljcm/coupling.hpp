#pragma once

#include <complex>

namespace nljcm {

using complex = std::complex<double>;

/// Symmetric (triplet) states of the two ions, labelled by the J_z eigenvalue.
enum class DickeLevel : int { Up = 1, Mid = 0, Down = -1 };

/// Physical inputs of the two-ion k-th red sideband model plus the numerical
/// controls shared by the analytic and brute-force paths.
struct ModelParams {
  double eta = 0.1;        ///< Lamb-Dicke parameter (dimensionless)
  double rabi = 0.0;       ///< Rabi frequency Omega (rad/s)
  int k = 1;               ///< sideband order
  int n_max = 0;           ///< Fock truncation (highest phonon number kept)
  double tail_tol = 1e-12; ///< allowed discarded phonon probability

  /// Throws std::invalid_argument naming the first violated invariant.
  void validate() const;
};

/// Shape of the chain {|1,n-2k>, |0,n-k>, |-1,n>} anchored at phonon index n.
enum class ChainClass {
  Full,      ///< n >= 2k: three coupled states
  TwoLevel,  ///< k <= n < 2k: |1,n-2k> does not exist
  Frozen,    ///< n < k: |-1,n> is uncoupled
};

const char* to_string(ChainClass c);

/// Real chain couplings A(n) (|0,n-k> <-> |1,n-2k>) and B(n)
/// (|-1,n> <-> |0,n-k>), in rad/s. The i^k phase of the coupling operator is
/// not included; it is applied by the propagator.
struct ChainCoefficients {
  int n = 0;
  int k = 1;
  double a_coef = 0.0;
  double b_coef = 0.0;
  ChainClass chain_class = ChainClass::Frozen;

  /// sqrt(A^2 + B^2), the nonzero chain eigenfrequency.
  double frequency() const;
};

ChainClass classify_chain(int n, int k);

/// A(n) and B(n) via the Laguerre recurrence and log-space factorial ratios.
/// Requires 0 <= n <= params.n_max.
ChainCoefficients chain_coefficients(const ModelParams& params, int n);

/// i^p for integer p, exact.
complex i_pow(int p);

/// <row| f(a^+a) a^k |col> summed directly from the normal-ordered series of
/// the nonlinear coupling function. Zero unless col == row + k. The series is
/// cut once it is past its largest term and the next term drops below 1e-18
/// of the running sum.
///
/// Shares no code with chain_coefficients: no Laguerre recurrence and no
/// log-space factorials.
complex coupling_operator_element(const ModelParams& params, int row, int col);

}  // namespace nljcm
