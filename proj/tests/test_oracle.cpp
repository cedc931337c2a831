#include <cmath>
#include <numbers>
#include <set>

#include <doctest.h>

#include "nljcm/oracle.hpp"
#include "support/oracles.hpp"

using namespace nljcm;

namespace {

constexpr double kRabi = 2.0 * std::numbers::pi * 500e3;

ModelParams params(double eta, int k, int n_max) {
  ModelParams p;
  p.eta = eta;
  p.rabi = kRabi;
  p.k = k;
  p.n_max = n_max;
  return p;
}

using Key = std::pair<Eigen::Index, Eigen::Index>;

std::set<Key> nonzero_upper(const DenseHamiltonian& h) {
  std::set<Key> out;
  for (Eigen::Index r = 0; r < h.dim(); ++r) {
    for (Eigen::Index c = r + 1; c < h.dim(); ++c) {
      if (h.elements(r, c) != complex(0.0, 0.0)) out.insert({r, c});
    }
  }
  return out;
}

// Chain label n of a basis state |level, m>: m + k (1 + level).
int chain_of(const DenseHamiltonian& h, Eigen::Index idx) {
  const int fock = h.params.n_max + 1;
  const int slot = static_cast<int>(idx) / fock;
  const int m = static_cast<int>(idx) % fock;
  return m + h.params.k * (2 - slot);
}

}  // namespace

TEST_CASE("build_hamiltonian: no phonons means no couplings") {
  const auto h = build_hamiltonian(params(0.1, 1, 0));
  CHECK(h.dim() == 3);
  CHECK(h.elements.cwiseAbs().maxCoeff() == 0.0);
  CHECK(h.elements.row(h.index(DickeLevel::Down, 0)).cwiseAbs().sum() == 0.0);
}

TEST_CASE("build_hamiltonian: k=1, n_max=2 coupling pattern") {
  const auto h = build_hamiltonian(params(0.1, 1, 2));
  using L = DickeLevel;
  const std::set<Key> want = {
      {h.index(L::Mid, 0), h.index(L::Down, 1)},
      {h.index(L::Mid, 1), h.index(L::Down, 2)},
      {h.index(L::Up, 0), h.index(L::Mid, 1)},
      {h.index(L::Up, 1), h.index(L::Mid, 2)},
  };
  CHECK(nonzero_upper(h) == want);
  CHECK(h.elements == h.elements.adjoint());
}

TEST_CASE("build_hamiltonian: k=2 magnitudes equal sqrt2 Omega |F| element by element") {
  const auto p = params(0.2, 2, 6);
  const auto h = build_hamiltonian(p);
  using L = DickeLevel;
  for (int m = 0; m + 2 <= 6; ++m) {
    const double want = std::sqrt(2.0) * kRabi * std::abs(coupling_operator_element(p, m, m + 2));
    CHECK(std::abs(h.elements(h.index(L::Up, m), h.index(L::Mid, m + 2))) ==
          doctest::Approx(want).epsilon(1e-15));
    CHECK(std::abs(h.elements(h.index(L::Mid, m), h.index(L::Down, m + 2))) ==
          doctest::Approx(want).epsilon(1e-15));
  }
  CHECK(nonzero_upper(h).size() == 2 * 5);
}

TEST_CASE("build_hamiltonian: Hermitian with the chain selection rule") {
  for (int k : {1, 2, 3}) {
    const auto h = build_hamiltonian(params(0.3, k, 25));
    CHECK(h.elements == h.elements.adjoint());
    const int fock = h.params.n_max + 1;
    for (Eigen::Index r = 0; r < h.dim(); ++r) {
      for (Eigen::Index c = 0; c < h.dim(); ++c) {
        if (h.elements(r, c) == complex(0.0, 0.0)) continue;
        const int level_r = 1 - static_cast<int>(r) / fock;
        const int level_c = 1 - static_cast<int>(c) / fock;
        const int m_r = static_cast<int>(r) % fock;
        const int m_c = static_cast<int>(c) % fock;
        CHECK(std::abs(level_r - level_c) == 1);
        CHECK(m_r - m_c == -k * (level_r - level_c));
        // never couples different chains
        CHECK(chain_of(h, r) == chain_of(h, c));
      }
    }
  }
}

TEST_CASE("evolve: t = 0 reproduces the initial marginals") {
  const auto p = params(0.2, 1, 40);
  const auto mixture = phonon_distribution(InitialMotionalState::coherent(5.0), 30, 1e-12);
  const std::vector<double> t0{0.0};
  const auto tr = evolve(build_hamiltonian(p), mixture, t0);
  CHECK(std::abs(tr.rho_11[0]) < 1e-14);
  CHECK(std::abs(tr.rho_00[0]) < 1e-14);
  CHECK(std::abs(tr.rho_m1m1[0] + mixture.tail - 1.0) < 1e-13);
}

TEST_CASE("evolve: k=1 Fock |1> flops at B(1)") {
  const auto p = params(0.1, 1, 12);
  const double b1 = std::sqrt(2.0) * kRabi * std::exp(-0.005) * 0.1;
  const auto mixture = phonon_distribution(InitialMotionalState::fock(1), 12, 1e-12);
  const auto grid = uniform_grid(40e-6, 81);
  const auto tr = evolve(build_hamiltonian(p), mixture, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double s = std::sin(b1 * grid[i]);
    CHECK(std::abs(tr.rho_00[i] - s * s) < 1e-10);
    CHECK(std::abs(tr.rho_11[i]) < 1e-10);
  }
}

TEST_CASE("SpectralPropagator: probability and energy conservation") {
  const auto p = params(0.25, 2, 30);
  const SpectralPropagator prop(build_hamiltonian(p));
  const auto& h = prop.hamiltonian().elements;

  // superposition spread over several chains and levels
  nljcm::testing::Sampler s(5);
  Eigen::VectorXcd psi0(prop.hamiltonian().dim());
  for (Eigen::Index i = 0; i < psi0.size(); ++i) psi0(i) = complex(s.uniform(-1, 1), s.uniform(-1, 1));
  psi0.normalize();
  const double e0 = (psi0.adjoint() * h * psi0)(0).real();

  for (double t : {1e-6, 3.3e-5, 2e-4, 1e-3}) {
    const Eigen::VectorXcd psi = prop.evolve_state(psi0, t);
    CHECK(std::abs(psi.squaredNorm() - 1.0) < 1e-10);
    const double e = (psi.adjoint() * h * psi)(0).real();
    CHECK(std::abs(e - e0) <= 1e-10 * std::abs(e0));
  }

  const auto tr = prop.populations(psi0, uniform_grid(1e-3, 50));
  for (std::size_t i = 0; i < tr.size(); ++i) {
    CHECK(std::abs(tr.rho_11[i] + tr.rho_00[i] + tr.rho_m1m1[i] - 1.0) < 1e-10);
  }
}

TEST_CASE("SpectralPropagator: rejects malformed initial states") {
  const SpectralPropagator prop(build_hamiltonian(params(0.1, 1, 5)));
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(prop.hamiltonian().dim());
  psi(0) = 2.0;
  CHECK_THROWS_AS(prop.populations(psi, std::vector<double>{0.0}), std::invalid_argument);
  CHECK_THROWS_AS(prop.evolve_state(Eigen::VectorXcd::Zero(3), 0.0), std::invalid_argument);

  PhononDistribution too_long;
  too_long.weights.assign(10, 0.1);
  CHECK_THROWS_AS(prop.populations(too_long, std::vector<double>{0.0}), std::invalid_argument);
  PhononDistribution unnormalized;
  unnormalized.weights = {0.5, 0.4};
  CHECK_THROWS_AS(prop.populations(unnormalized, std::vector<double>{0.0}), std::invalid_argument);
  CHECK_THROWS_AS(build_hamiltonian(params(0.0, 1, 5)), std::invalid_argument);
}

TEST_CASE("compare_to_oracle: k=2 and k=3 coherent states") {
  for (auto [eta, k, alpha_sq] : {std::tuple{0.2, 2, 8.0}, std::tuple{0.3, 3, 6.0}}) {
    const auto state = InitialMotionalState::coherent(alpha_sq);
    auto p = params(eta, k, recommended_n_max(state, 1e-12, k));
    const auto cmp = compare_to_oracle(p, state, uniform_grid(400e-6, 41));
    CHECK(cmp.max_abs_error <= 1e-9);
  }
}
