#include "nljcm/oracle.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "nljcm/errors.hpp"

namespace nljcm {

namespace {

constexpr std::array<DickeLevel, 3> kLevels = {DickeLevel::Up, DickeLevel::Mid, DickeLevel::Down};

int slot(DickeLevel level) { return 1 - static_cast<int>(level); }

void check_oracle_params(const ModelParams& p) {
  if (!(p.eta > 0.0) || !(p.rabi > 0.0) || p.k < 1 || p.n_max < 0) {
    throw std::invalid_argument("oracle needs eta > 0, rabi > 0, k >= 1, n_max >= 0");
  }
}

}  // namespace

Eigen::Index DenseHamiltonian::index(DickeLevel level, int n) const {
  return static_cast<Eigen::Index>(slot(level)) * (params.n_max + 1) + n;
}

DenseHamiltonian build_hamiltonian(const ModelParams& params) {
  check_oracle_params(params);
  const Eigen::Index fock_dim = params.n_max + 1;

  Eigen::MatrixXcd f = Eigen::MatrixXcd::Zero(fock_dim, fock_dim);
  for (int row = 0; row <= params.n_max; ++row) {
    for (int col = 0; col <= params.n_max; ++col) {
      f(row, col) = coupling_operator_element(params, row, col);
    }
  }

  // J+ on the triplet, ordered (+1, 0, -1).
  Eigen::Matrix3d j_plus = Eigen::Matrix3d::Zero();
  j_plus(0, 1) = std::sqrt(2.0);
  j_plus(1, 2) = std::sqrt(2.0);

  DenseHamiltonian h;
  h.params = params;
  Eigen::MatrixXcd upper = Eigen::MatrixXcd::Zero(3 * fock_dim, 3 * fock_dim);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      if (j_plus(a, b) != 0.0) {
        upper.block(a * fock_dim, b * fock_dim, fock_dim, fock_dim) =
            (params.rabi * j_plus(a, b)) * f;
      }
    }
  }
  h.elements = upper + upper.adjoint();
  return h;
}

SpectralPropagator::SpectralPropagator(const DenseHamiltonian& h) : h_(h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.elements);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("Hermitian eigendecomposition did not converge (dim=" +
                         std::to_string(h.dim()) + ")");
  }
  eigenvectors_ = solver.eigenvectors();
  eigenvalues_ = solver.eigenvalues();
}

Eigen::VectorXcd SpectralPropagator::evolve_state(const Eigen::VectorXcd& psi0, double t) const {
  if (psi0.size() != h_.dim()) {
    throw std::invalid_argument("state vector dimension does not match the Hamiltonian");
  }
  const Eigen::VectorXcd phases =
      (eigenvalues_.cast<complex>() * complex(0.0, -t)).array().exp().matrix();
  return eigenvectors_ * (phases.asDiagonal() * (eigenvectors_.adjoint() * psi0));
}

PopulationTrace SpectralPropagator::populations(const Eigen::VectorXcd& psi0,
                                                std::span<const double> times) const {
  if (psi0.size() != h_.dim()) {
    throw std::invalid_argument("state vector dimension does not match the Hamiltonian");
  }
  if (std::abs(psi0.squaredNorm() - 1.0) > 1e-12) {
    throw std::invalid_argument("initial state is not normalized");
  }
  const double one = 1.0;
  return evolve_columns(psi0, std::span<const double>(&one, 1), times);
}

PopulationTrace SpectralPropagator::populations(const PhononDistribution& mixture,
                                                std::span<const double> times) const {
  const auto fock_dim = static_cast<std::size_t>(h_.params.n_max) + 1;
  if (mixture.weights.size() > fock_dim) {
    throw std::invalid_argument("mixture has more phonon weights than the oracle truncation");
  }
  const double total =
      std::accumulate(mixture.weights.begin(), mixture.weights.end(), 0.0) + mixture.tail;
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("initial mixture is not normalized (sum = " +
                                std::to_string(total) + ")");
  }

  std::vector<double> column_weights;
  std::vector<int> phonons;
  for (std::size_t n = 0; n < mixture.weights.size(); ++n) {
    if (mixture.weights[n] > 0.0) {
      column_weights.push_back(mixture.weights[n]);
      phonons.push_back(static_cast<int>(n));
    }
  }
  Eigen::MatrixXcd columns =
      Eigen::MatrixXcd::Zero(h_.dim(), static_cast<Eigen::Index>(phonons.size()));
  for (std::size_t c = 0; c < phonons.size(); ++c) {
    columns(h_.index(DickeLevel::Down, phonons[c]), static_cast<Eigen::Index>(c)) = 1.0;
  }
  PopulationTrace trace = evolve_columns(columns, column_weights, times);
  trace.tail_bound = mixture.tail;
  return trace;
}

PopulationTrace SpectralPropagator::evolve_columns(const Eigen::MatrixXcd& initial_columns,
                                                   std::span<const double> column_weights,
                                                   std::span<const double> times) const {
  const Eigen::Index fock_dim = h_.params.n_max + 1;
  const Eigen::MatrixXcd projected = eigenvectors_.adjoint() * initial_columns;

  PopulationTrace trace;
  trace.params = h_.params;
  trace.times.assign(times.begin(), times.end());
  trace.rho_11.resize(times.size());
  trace.rho_00.resize(times.size());
  trace.rho_m1m1.resize(times.size());

  for (std::size_t i = 0; i < times.size(); ++i) {
    const Eigen::VectorXcd phases =
        (eigenvalues_.cast<complex>() * complex(0.0, -times[i])).array().exp().matrix();
    const Eigen::MatrixXcd states = eigenvectors_ * (phases.asDiagonal() * projected);

    std::array<double, 3> acc{0.0, 0.0, 0.0};
    for (Eigen::Index c = 0; c < states.cols(); ++c) {
      const double w = column_weights[static_cast<std::size_t>(c)];
      for (std::size_t l = 0; l < kLevels.size(); ++l) {
        const Eigen::Index begin = h_.index(kLevels[l], 0);
        acc[l] += w * states.col(c).segment(begin, fock_dim).squaredNorm();
      }
    }
    trace.rho_11[i] = acc[0];
    trace.rho_00[i] = acc[1];
    trace.rho_m1m1[i] = acc[2];
  }
  return trace;
}

PopulationTrace evolve(const DenseHamiltonian& h, const PhononDistribution& mixture,
                       std::span<const double> times) {
  return SpectralPropagator(h).populations(mixture, times);
}

OracleComparison compare_to_oracle(const ModelParams& params, const InitialMotionalState& state,
                                   std::span<const double> times, int oracle_margin) {
  if (oracle_margin < 0) {
    throw std::invalid_argument("oracle margin must be >= 0");
  }
  const auto start = std::chrono::steady_clock::now();

  OracleComparison cmp;
  cmp.analytic = populations(params, state, times);

  ModelParams big = params;
  big.n_max = params.n_max + oracle_margin;
  cmp.oracle_n_max = big.n_max;
  const PhononDistribution mixture =
      phonon_distribution(state, params.n_max, params.tail_tol);
  cmp.brute_force = evolve(build_hamiltonian(big), mixture, times);
  cmp.brute_force.initial = state;

  for (std::size_t i = 0; i < times.size(); ++i) {
    for (const auto level : kLevels) {
      const double d =
          std::abs(cmp.analytic.level(level)[i] - cmp.brute_force.level(level)[i]);
      cmp.max_abs_error = std::max(cmp.max_abs_error, d);
    }
  }
  cmp.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return cmp;
}

}  // namespace nljcm
