#pragma once

namespace nljcm {

/// Generalized (associated) Laguerre polynomial L_n^k(x).
///
/// Evaluated with the three-term recurrence in the degree,
///   (m+1) L_{m+1} = (2m+k+1-x) L_m - (m+k) L_{m-1},
/// starting from L_0 = 1 and L_1 = 1+k-x. The recurrence is forward-stable
/// for x >= 0, unlike the alternating explicit sum, which loses digits to
/// cancellation once n x grows past a few tens.
///
/// Throws std::invalid_argument for n < 0, k < 0 or x < 0 (or NaN).
double laguerre(int n, int k, double x);

/// ln(p!/q!) accumulated as a signed sum of logarithms. Factorials are never
/// formed, so arguments far beyond 170 are fine.
///
/// Throws std::invalid_argument for negative arguments.
double log_factorial_ratio(int p, int q);

}  // namespace nljcm
