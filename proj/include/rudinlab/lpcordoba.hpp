#pragma once

// Dyadic Littlewood-Paley blocks and the square function, Bernstein-type
// derivative inequalities, and the weighted quadratic-spectrum (Cordoba-type)
// ratio.

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <vector>

#include "rudinlab/expsum.hpp"
#include "rudinlab/rational.hpp"

namespace rudinlab {

/// Block of frequency n: 0 for n in {0, 1}; j for 2^j <= n < 2^(j+1) (n >= 2);
/// -j for -2^j < n <= -2^(j-1) (n <= -1).
int dyadic_block_index(std::int64_t n);

struct DyadicBlocks {
  std::map<int, TrigPoly> blocks;
  std::int64_t source_degree = 0;

  TrigPoly reassemble() const;
};

DyadicBlocks dyadic_split(const TrigPoly& P);

/// ||(sum_j |S_j P|^2)^(1/2)||_alpha on the grid. Needs alpha > 1 and an
/// alias-free grid (points >= 2 degree + 1).
double square_function_norm(const TrigPoly& P, double alpha, const GridSpec& grid);

/// Derivative convention. Analytic: P(z) = sum_{m>=0} c_m z^m differentiated in
/// z, multiplier m!/(m-k)!, bound n!/(n-k)!. Trigonometric: differentiated in
/// theta in frequency units, multiplier (i m)^k, bound n^k.
enum class DerivativeKind { Analytic, Trigonometric };

/// Analytic when the spectrum is nonnegative, trigonometric otherwise.
DerivativeKind natural_derivative_kind(const TrigPoly& P);

/// k-th derivative under the given convention. Analytic differentiation keeps
/// each term at its frequency: |z^(m-k)| = |z^m| on the circle, so norms agree.
TrigPoly derivative(const TrigPoly& P, int k, DerivativeKind kind);

struct BernsteinRecord {
  double lhs;    // ||P^(k)||_p
  double rhs;    // constant * ||P||_p
  double ratio;  // lhs / rhs (0 when rhs is 0)
  DerivativeKind kind;
  bool holds;  // lhs <= rhs (1 + 1e-9)
};

/// Default quadrature: midpoint grid of 128 n points (a multiple of 4n, so a
/// degree-n cosine and sine sample identically).
GridSpec bernstein_grid(std::int64_t n);

/// Needs p >= 1, k >= 1 and k <= degree(P); a constant polynomial is accepted
/// with both sides zero.
BernsteinRecord bernstein_check(const TrigPoly& P, double p, int k);
BernsteinRecord bernstein_check(const TrigPoly& P, double p, int k, const GridSpec& grid);

/// ||sum_k k^(2 ell) a_k e(k^2 theta)||_alpha / (sum_k k^(4 ell) a_k^2)^(1/2),
/// with 8N^2 midpoint theta-nodes. a must be positive and nonincreasing,
/// alpha in [2, 4).
double cordoba_ratio(std::span<const double> a, int ell, double alpha);

/// Block of index k under the partition D_j = [2^(j/2), 2^((j+1)/2)):
/// the j with 2^j <= k^2 < 2^(j+1).
int quadratic_block_index(std::int64_t k);

/// k-ranges of a polynomial supported on {k^2 : 1 <= k <= N}, keyed by j.
/// Throws precondition_error when some frequency is not a positive square.
std::map<int, std::vector<std::int64_t>> quadratic_block_split(const TrigPoly& P);

/// Summation by parts over k in [lo, hi):
///   sum a_k (T_k - T_{k-1})
///     = sum_{k=lo}^{hi-2} (a_k - a_{k+1}) T_k + a_{hi-1} T_{hi-1} - a_lo T_{lo-1}.
/// Sequences are indexed from 0; needs 1 <= lo < hi <= size.
struct AbelSides {
  Rational lhs;
  Rational rhs;
};
AbelSides abel_summation(std::span<const Rational> a, std::span<const Rational> T,
                         std::size_t lo, std::size_t hi);

/// Uniform double in [0,1) from the top 53 bits of one generator draw.
double uniform01(std::mt19937_64& rng);

/// Random polynomial of exact degree n: coefficients with real and imaginary
/// parts uniform in [-1,1) on [-n, n] (or [0, n] when analytic), the top
/// coefficient forced nonzero.
TrigPoly random_trigpoly(std::mt19937_64& rng, std::int64_t n, bool analytic);

/// count polynomials from one generator seeded with seed; each degree is
/// drawn uniformly from [1, max_degree] before its coefficients.
std::vector<TrigPoly> random_family(std::uint64_t seed, std::size_t count, std::int64_t max_degree,
                                    bool analytic);

/// Midpoint grid of 32 n points used for norms of a degree-n family member.
GridSpec family_grid(std::int64_t n);

}  // namespace rudinlab
