#pragma once

// Arithmetic support: totient and Moebius sieves, zeta values, the weighted
// totient summatory function and its asymptotic main terms, Bernoulli numbers
// and Faulhaber power sums.

#include <cstdint>
#include <span>
#include <vector>

#include "rudinlab/rational.hpp"

namespace rudinlab {

/// Sieves refuse N above this unless a larger cap is passed explicitly.
inline constexpr std::int64_t kDefaultSieveCap = 100'000'000;

/// phi(n) for n = 0..N (index n; entry 0 is 0). Linear sieve.
std::vector<std::int64_t> totient_sieve(std::int64_t N, std::int64_t cap = kDefaultSieveCap);

/// mu(n) for n = 0..N (index n; entry 0 is 0). Linear sieve.
std::vector<std::int8_t> mobius_sieve(std::int64_t N, std::int64_t cap = kDefaultSieveCap);

inline constexpr long double kEulerMascheroni = 0.577215664901532860606512090082402431L;

/// zeta(s) for real s > 1 (Euler-Maclaurin, ~1e-18 relative in long double).
long double zeta(long double s);
/// Analytic continuation, any real s != 1 with s > -20.
long double zeta_continued(long double s);
/// zeta'(s) for real s > 0, s != 1.
long double zeta_derivative(long double s);

/// A = sum_{n>=1} mu(n) log(n) / n^2, evaluated through A = zeta'(2)/zeta(2)^2.
long double mobius_log_constant();

/// Partial sum of mu(n) log n / n^2 for n <= M, with the tail bound
/// (log M + 1)/M on the omitted terms.
struct TruncatedSum {
  long double value;
  long double tail_bound;
};
TruncatedSum mobius_log_partial(std::int64_t M);

struct ZetaConstants {
  std::vector<long double> zeta_values;  // zeta(s) for the requested s
  long double euler_mascheroni;
  long double A;
};
ZetaConstants zeta_constants(std::span<const double> s_values);

/// Exact weighted totient sum against its asymptotic main terms:
///   beta > 1, beta != 2: N^(2-b)/((2-b) zeta(2)) + zeta(b-1)/zeta(b), scale N^(1-b) log N
///   beta <= 1:           N^(2-b)/((2-b) zeta(2)),                   scale N^(1-b) log N
///   beta == 2:           log N / zeta(2) + C / zeta(2) - A,          scale log N / N
struct TotientSumEstimate {
  std::int64_t N;
  double beta;
  long double exact;
  long double main_terms;
  long double error_bound_scale;
  long double ratio;  // |exact - main_terms| / error_bound_scale
};

TotientSumEstimate totient_sum_compare(std::int64_t N, double beta);

/// One sieve, evaluated at every N of the ladder (ascending).
std::vector<TotientSumEstimate> totient_sum_ladder(std::span<const std::int64_t> ladder,
                                                   double beta);

/// For each ladder point N, the largest ratio over n in (N/10, N]: the
/// constant that bounds the discrepancy on that decade.
std::vector<long double> totient_ratio_decade_sup(std::span<const std::int64_t> ladder,
                                                  double beta);

/// Bernoulli numbers B_0..B_n, n <= 20, with B_1 = -1/2.
std::vector<Rational> bernoulli_numbers(int n);

/// sum_{k=1}^{N} k^ell via Bernoulli numbers; exact, ell <= 20. Throws
/// std::overflow_error when the value leaves 128-bit range.
Rational faulhaber_sum(std::int64_t N, int ell);

}  // namespace rudinlab
