#include "nljcm/specialfn.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nljcm {

double laguerre(int n, int k, double x) {
  if (n < 0 || k < 0) {
    throw std::invalid_argument("laguerre: degree and order must be nonnegative (n=" +
                                std::to_string(n) + ", k=" + std::to_string(k) + ")");
  }
  if (!(x >= 0.0)) {
    throw std::invalid_argument("laguerre: argument must be nonnegative");
  }
  if (n == 0) {
    return 1.0;
  }

  const double kd = k;
  double prev = 1.0;
  double curr = 1.0 + kd - x;
  for (int m = 1; m < n; ++m) {
    const double md = m;
    const double next = ((2.0 * md + kd + 1.0 - x) * curr - (md + kd) * prev) / (md + 1.0);
    prev = curr;
    curr = next;
  }
  return curr;
}

double log_factorial_ratio(int p, int q) {
  if (p < 0 || q < 0) {
    throw std::invalid_argument("log_factorial_ratio: arguments must be nonnegative");
  }
  // ln(p!/q!) = +sum ln(q+1..p) when p > q, -sum ln(p+1..q) otherwise.
  const int lo = p < q ? p : q;
  const int hi = p < q ? q : p;
  double sum = 0.0;
  for (int i = lo + 1; i <= hi; ++i) {
    sum += std::log(static_cast<double>(i));
  }
  return p >= q ? sum : -sum;
}

}  // namespace nljcm
