#include "nljcm/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nljcm {

double EnvelopeReport::contrast() const {
  if (amplitudes.size() < 2 || amplitudes.front() <= 0.0) {
    return 0.0;
  }
  const auto [lo, hi] = std::minmax_element(amplitudes.begin() + 1, amplitudes.end());
  return (*hi - *lo) / amplitudes.front();
}

EnvelopeReport envelope(const PopulationTrace& trace, DickeLevel which, double window) {
  if (!(window > 0.0) || !std::isfinite(window)) {
    throw std::invalid_argument("envelope window must be positive");
  }
  const auto& values = trace.level(which);
  if (trace.times.size() < 2 || values.size() != trace.times.size()) {
    throw InsufficientDataError("envelope needs a trace with at least two samples");
  }
  const double t0 = trace.times.front();
  const double span = trace.times.back() - t0;
  const auto count = static_cast<std::size_t>(std::floor(span / window * (1.0 + 1e-12)));
  if (count < 3) {
    throw InsufficientDataError("trace spans " + std::to_string(span / window) +
                                " windows; at least 3 are required");
  }

  std::vector<double> lo(count, INFINITY);
  std::vector<double> hi(count, -INFINITY);
  std::vector<std::size_t> samples(count, 0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    auto w = static_cast<std::size_t>(std::floor((trace.times[i] - t0) / window));
    if (w == count && trace.times[i] - t0 <= count * window * (1.0 + 1e-12)) {
      w = count - 1;  // closing sample on the last boundary
    }
    if (w >= count) continue;
    lo[w] = std::min(lo[w], values[i]);
    hi[w] = std::max(hi[w], values[i]);
    ++samples[w];
  }

  EnvelopeReport report;
  report.level = which;
  report.window = window;
  for (std::size_t w = 0; w < count; ++w) {
    if (samples[w] < 2) {
      throw InsufficientDataError("window " + std::to_string(w) +
                                  " holds fewer than two samples; refine the time grid");
    }
    report.window_centers.push_back(t0 + (static_cast<double>(w) + 0.5) * window);
    report.amplitudes.push_back(hi[w] - lo[w]);
  }

  const double initial = report.amplitudes.front();
  if (initial <= 0.0) {
    return report;
  }
  std::size_t w = 1;
  for (; w < count; ++w) {
    if (report.amplitudes[w] < kCollapseFraction * initial) {
      report.collapse_found = true;
      report.collapse_time = report.window_centers[w];
      break;
    }
  }
  if (!report.collapse_found) {
    return report;
  }
  for (++w; w < count; ++w) {
    if (report.amplitudes[w] > kRevivalFraction * initial) {
      report.revival_found = true;
      report.revival_time = report.window_centers[w];
      break;
    }
  }
  return report;
}

namespace {

double chain_frequency(const ModelParams& params, int n) {
  ModelParams p = params;
  p.n_max = std::max(p.n_max, n);
  return chain_coefficients(p, n).frequency();
}

}  // namespace

double rabi_period(const ModelParams& params, int n_bar) {
  const double w = chain_frequency(params, n_bar);
  if (!(w > 0.0)) {
    throw std::domain_error("chain " + std::to_string(n_bar) + " does not oscillate");
  }
  return 2.0 * std::numbers::pi / w;
}

double first_order_revival_time(const ModelParams& params, int n_bar) {
  const double delta = chain_frequency(params, n_bar + 1) - chain_frequency(params, n_bar);
  if (delta == 0.0) {
    throw std::domain_error("chain frequencies are degenerate at n_bar=" +
                            std::to_string(n_bar));
  }
  return 2.0 * std::numbers::pi / std::abs(delta);
}

}  // namespace nljcm
