#include <cmath>
#include <numbers>

#include <doctest.h>

#include "nljcm/analysis.hpp"
#include "nljcm/errors.hpp"

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

PopulationTrace synthetic(std::size_t points, double t_max, auto&& f) {
  PopulationTrace tr;
  tr.times = uniform_grid(t_max, static_cast<int>(points));
  for (double t : tr.times) {
    tr.rho_00.push_back(f(t));
    tr.rho_11.push_back(0.0);
    tr.rho_m1m1.push_back(1.0 - f(t));
  }
  return tr;
}

PopulationTrace fig1_trace(double rabi_scale, double t_max) {
  const auto state = InitialMotionalState::coherent(10.0);
  auto p = params(0.1, 1, recommended_n_max(state, 1e-12, 1));
  p.rabi *= rabi_scale;
  return populations(p, state, uniform_grid(t_max, 6001));
}

}  // namespace

TEST_CASE("envelope: constant trace has zero amplitude and no events") {
  const auto tr = synthetic(301, 1.0, [](double) { return 0.25; });
  const auto rep = envelope(tr, DickeLevel::Mid, 0.1);
  CHECK(rep.amplitudes.size() == 10);
  for (double a : rep.amplitudes) CHECK(a == 0.0);
  CHECK_FALSE(rep.collapse_found);
  CHECK_FALSE(rep.revival_found);
  CHECK(rep.contrast() == 0.0);
}

TEST_CASE("envelope: steady sinusoid neither collapses nor revives") {
  const auto tr = synthetic(4001, 1.0, [](double t) { return 0.5 + 0.3 * std::sin(40.0 * t); });
  const auto rep = envelope(tr, DickeLevel::Mid, 0.2);
  CHECK(rep.amplitudes.size() == 5);
  for (double a : rep.amplitudes) CHECK(a == doctest::Approx(0.6).epsilon(1e-3));
  CHECK_FALSE(rep.collapse_found);
  CHECK(rep.contrast() < 1e-3);
  CHECK(rep.window_centers.front() == doctest::Approx(0.1));
}

TEST_CASE("envelope: beat note collapses at the node and revives after it") {
  // 0.5 + 0.25 cos(w t) cos(d t): amplitude vanishes at d t = pi/2
  const double d = std::numbers::pi / 2.0;
  const auto tr = synthetic(20001, 2.0, [&](double t) {
    return 0.5 + 0.25 * std::cos(400.0 * t) * std::cos(d * t);
  });
  const auto rep = envelope(tr, DickeLevel::Mid, 0.1);
  REQUIRE(rep.collapse_found);
  REQUIRE(rep.revival_found);
  CHECK(rep.collapse_time < 1.0);
  CHECK(rep.collapse_time > 0.8);
  CHECK(rep.revival_time > 1.0);
  CHECK(rep.revival_time < rep.window_centers.back() + 1e-12);
  CHECK(rep.contrast() > 0.8);
}

TEST_CASE("envelope: fig1 middle level collapses before it revives") {
  const auto state = InitialMotionalState::coherent(10.0);
  const auto p = params(0.1, 1, recommended_n_max(state, 1e-12, 1));
  const double revival = first_order_revival_time(p, 10);
  const auto tr = populations(p, state, uniform_grid(2.0 * revival, 6001));
  const auto rep = envelope(tr, DickeLevel::Mid, 3.0 * rabi_period(p, 10));
  REQUIRE(rep.collapse_found);
  REQUIRE(rep.revival_found);
  CHECK(rep.collapse_time < rep.revival_time);
}

TEST_CASE("envelope: invariant under a constant offset") {
  auto tr = fig1_trace(1.0, 150e-6);
  const auto base = envelope(tr, DickeLevel::Mid, 6e-6);
  for (double& v : tr.rho_00) v += 0.125;
  const auto shifted = envelope(tr, DickeLevel::Mid, 6e-6);
  REQUIRE(base.amplitudes.size() == shifted.amplitudes.size());
  for (std::size_t i = 0; i < base.amplitudes.size(); ++i) {
    CHECK(shifted.amplitudes[i] == doctest::Approx(base.amplitudes[i]).epsilon(1e-12));
  }
  CHECK(shifted.collapse_found == base.collapse_found);
  CHECK(shifted.collapse_time == base.collapse_time);
  CHECK(shifted.revival_time == base.revival_time);
}

TEST_CASE("envelope: doubling the Rabi frequency halves the event times") {
  const auto state = InitialMotionalState::coherent(10.0);
  const auto p = params(0.1, 1, recommended_n_max(state, 1e-12, 1));
  const double window = 3.0 * rabi_period(p, 10);
  const double t_max = 2.0 * first_order_revival_time(p, 10);

  const auto slow = envelope(fig1_trace(1.0, t_max), DickeLevel::Mid, window);
  const auto fast = envelope(fig1_trace(2.0, t_max / 2.0), DickeLevel::Mid, window / 2.0);
  REQUIRE(slow.collapse_found);
  REQUIRE(fast.collapse_found);
  REQUIRE(slow.revival_found);
  REQUIRE(fast.revival_found);
  CHECK(fast.collapse_time == doctest::Approx(slow.collapse_time / 2.0).epsilon(0.05));
  CHECK(fast.revival_time == doctest::Approx(slow.revival_time / 2.0).epsilon(0.05));
}

TEST_CASE("envelope: too little data") {
  const auto tr = synthetic(100, 1.0, [](double t) { return t; });
  CHECK_THROWS_AS(envelope(tr, DickeLevel::Mid, 0.4), InsufficientDataError);
  CHECK_NOTHROW(envelope(tr, DickeLevel::Mid, 1.0 / 3.0));
  const auto sparse = synthetic(4, 1.0, [](double t) { return t; });
  CHECK_THROWS_AS(envelope(sparse, DickeLevel::Mid, 0.25), InsufficientDataError);
  CHECK_THROWS_AS(envelope(tr, DickeLevel::Mid, 0.0), std::invalid_argument);
}

TEST_CASE("contrast: spread of later windows over the first") {
  EnvelopeReport rep;
  rep.amplitudes = {0.5, 0.1, 0.4, 0.05};
  CHECK(rep.contrast() == doctest::Approx(0.7));
  rep.amplitudes = {0.0, 0.1, 0.2};
  CHECK(rep.contrast() == 0.0);
}

TEST_CASE("rabi_period and first_order_revival_time") {
  const auto p = params(0.1, 1, 20);
  const auto c10 = chain_coefficients(p, 10);
  const auto c11 = chain_coefficients(p, 11);
  CHECK(rabi_period(p, 10) == doctest::Approx(2.0 * std::numbers::pi / c10.frequency()));
  CHECK(first_order_revival_time(p, 10) ==
        doctest::Approx(2.0 * std::numbers::pi / std::abs(c11.frequency() - c10.frequency())));
  // chain above n_max is still evaluated
  CHECK(rabi_period(p, 40) > 0.0);
  CHECK_THROWS_AS(rabi_period(p, 0), std::domain_error);
}
