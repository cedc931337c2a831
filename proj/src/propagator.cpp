#include "nljcm/propagator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nljcm {

namespace {

// 1 - cos(theta) without cancellation near theta = 0.
double one_minus_cos(double theta) {
  const double h = std::sin(0.5 * theta);
  return 2.0 * h * h;
}

void check_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("propagator time must be finite and nonnegative");
  }
}

double full_chain_norm(const ChainCoefficients& c) {
  const double w2 = c.a_coef * c.a_coef + c.b_coef * c.b_coef;
  if (!(w2 > 0.0)) {
    throw std::domain_error("full chain n=" + std::to_string(c.n) +
                            " has vanishing couplings A = B = 0");
  }
  return w2;
}

}  // namespace

PhaseConvention phase_convention(int k) {
  return {-i_pow(k + 1), (k % 2 == 1) ? 1.0 : -1.0};
}

complex PropagatorBlock::element(DickeLevel row, DickeLevel col) const {
  // Level -1 is always the last basis index; the block holds the top `dim` levels
  // counted downward from there.
  const auto index = [&](DickeLevel l) -> Eigen::Index {
    return dim() - 1 - (static_cast<int>(l) + 1);
  };
  const Eigen::Index r = index(row);
  const Eigen::Index c = index(col);
  if (r < 0 || c < 0) return {0.0, 0.0};
  return u(r, c);
}

std::array<double, 3> PropagatorBlock::ground_column_populations() const {
  return {std::norm(element(DickeLevel::Up, DickeLevel::Down)),
          std::norm(element(DickeLevel::Mid, DickeLevel::Down)),
          std::norm(element(DickeLevel::Down, DickeLevel::Down))};
}

PropagatorBlock chain_propagator(const ChainCoefficients& coeffs, double t) {
  check_time(t);
  PropagatorBlock block;
  block.n = coeffs.n;
  block.t = t;
  block.chain_class = coeffs.chain_class;
  block.phases = phase_convention(coeffs.k);
  const complex down = block.phases.single_step;

  switch (coeffs.chain_class) {
    case ChainClass::Frozen:
      block.u = Eigen::MatrixXcd::Identity(1, 1);
      break;

    case ChainClass::TwoLevel: {
      const double b = coeffs.b_coef;
      const double c = std::cos(b * t);
      const double s = std::sin(b * t);
      block.u.resize(2, 2);
      block.u(0, 0) = c;
      block.u(1, 1) = c;
      block.u(0, 1) = down * s;
      block.u(1, 0) = -std::conj(block.u(0, 1));
      break;
    }

    case ChainClass::Full: {
      const double a = coeffs.a_coef;
      const double b = coeffs.b_coef;
      const double w2 = full_chain_norm(coeffs);
      const double w = std::sqrt(w2);
      const double c = std::cos(w * t);
      const double s = std::sin(w * t);
      const double omc = one_minus_cos(w * t);

      block.u.resize(3, 3);
      block.u(0, 0) = (a * a * c + b * b) / w2;
      block.u(1, 1) = c;
      block.u(2, 2) = (b * b * c + a * a) / w2;
      block.u(0, 1) = down * (a * s / w);
      block.u(1, 0) = -std::conj(block.u(0, 1));
      block.u(0, 2) = block.phases.double_step * a * b * omc / w2;
      block.u(2, 0) = block.u(0, 2);
      block.u(1, 2) = down * (b * s / w);
      block.u(2, 1) = -std::conj(block.u(1, 2));
      break;
    }
  }
  return block;
}

std::array<double, 3> chain_populations(const ChainCoefficients& coeffs, double t) {
  check_time(t);
  switch (coeffs.chain_class) {
    case ChainClass::Frozen:
      return {0.0, 0.0, 1.0};
    case ChainClass::TwoLevel: {
      const double s = std::sin(coeffs.b_coef * t);
      const double c = std::cos(coeffs.b_coef * t);
      return {0.0, s * s, c * c};
    }
    case ChainClass::Full: {
      const double a = coeffs.a_coef;
      const double b = coeffs.b_coef;
      const double w2 = full_chain_norm(coeffs);
      const double w = std::sqrt(w2);
      const double c = std::cos(w * t);
      const double s = std::sin(w * t);
      const double up = a * b * one_minus_cos(w * t) / w2;
      const double mid = b * s / w;
      const double ground = (b * b * c + a * a) / w2;
      return {up * up, mid * mid, ground * ground};
    }
  }
  return {0.0, 0.0, 1.0};
}

}  // namespace nljcm
