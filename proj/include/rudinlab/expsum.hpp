#pragma once

// Quadratic Weyl sums S_N(x,t) = sum_{n=1}^{N} e(n x + n^2 t) and general
// trigonometric polynomials, evaluated pointwise or on equispaced grids.
//
// All angles are fractional turns in [0,1). Sums start at n = 1; a sum from
// n = 0 differs by the single unimodular term e(0) = 1.

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "rudinlab/numeric.hpp"

namespace rudinlab {

/// Default cap on grid-point evaluations (points x terms) for one call.
inline constexpr std::uint64_t kDefaultWorkBudget = 8'000'000'000ULL;

/// Phase recurrence is re-anchored from the exact phase every this many terms.
inline constexpr std::int64_t kPhaseAnchorStride = 128;

/// A point of the torus [0,1)^2. Both coordinates are reduced mod 1.
struct TorusPoint {
  double x = 0.0;
  double t = 0.0;

  TorusPoint() = default;
  TorusPoint(double x_, double t_) : x(frac(x_)), t(frac(t_)) {}
};

/// Equispaced samples on [0,1): node k sits at k/points + offset.
struct GridSpec {
  std::size_t points = 1;
  double offset = 0.5;  // absolute shift, in [0, 1/points)

  /// Half-step (midpoint rule) grid; the default everywhere.
  static GridSpec midpoint(std::size_t points);
  /// Grid starting at 0.
  static GridSpec left(std::size_t points);

  double step() const { return 1.0 / static_cast<double>(points); }
  double node(std::size_t k) const;
  bool is_midpoint() const;
};

/// Finite trigonometric polynomial sum_n c_n e(n theta). Zero coefficients are
/// not stored, so the map's key set is the spectrum.
class TrigPoly {
 public:
  using Coeffs = std::map<std::int64_t, cplx>;

  TrigPoly() = default;
  explicit TrigPoly(Coeffs c);
  TrigPoly(std::initializer_list<std::pair<const std::int64_t, cplx>> init);

  const Coeffs& coeffs() const { return coeffs_; }
  cplx coeff(std::int64_t n) const;
  void set(std::int64_t n, cplx c);
  void add(std::int64_t n, cplx c);

  bool empty() const { return coeffs_.empty(); }
  std::size_t terms() const { return coeffs_.size(); }
  /// max |n| over the spectrum; 0 for the zero polynomial.
  std::int64_t degree() const;
  std::int64_t min_freq() const;
  std::int64_t max_freq() const;
  /// Sum of |c_n|; bounds sup |P|.
  double l1_norm() const;
  /// (sum |c_n|^2)^(1/2) = ||P||_2 by Parseval.
  double l2_norm() const;

  cplx operator()(double theta) const;

  friend bool operator==(const TrigPoly&, const TrigPoly&) = default;

 private:
  Coeffs coeffs_;
};

TrigPoly operator+(const TrigPoly& a, const TrigPoly& b);
TrigPoly operator-(const TrigPoly& a, const TrigPoly& b);
TrigPoly operator*(cplx s, const TrigPoly& p);

/// S_N(x,t) by phase recurrence (second difference of the phase is 2t) with
/// compensated summation. |result| <= N.
cplx weyl_sum(std::int64_t N, TorusPoint p);

/// Term-by-term reference: one exact-phase trig evaluation per term.
cplx weyl_sum_naive(std::int64_t N, TorusPoint p);

/// Writes the terms e(n x + n^2 t), n = 1..out.size(), using the same
/// re-anchored recurrence as weyl_sum.
void weyl_terms(double x, double t, std::span<cplx> out);

/// Means of |sum_k a_k e(k^2 theta)|^alpha over the grid, one per alpha.
/// a[k-1] is the coefficient of e(k^2 theta). One synthesis FFT of length
/// grid.points, then an index-keyed reduction.
std::vector<double> square_spectrum_moments(std::span<const cplx> a, std::span<const double> alphas,
                                            const GridSpec& grid);

/// weyl_sum(N, (x, t_k)) for every node t_k of the grid; bit-identical to the
/// pointwise calls. Throws resource_error if points*N exceeds the budget.
std::vector<cplx> weyl_sum_grid(std::int64_t N, double x, const GridSpec& t_grid,
                                std::uint64_t work_budget = kDefaultWorkBudget);

/// Values P(theta_k) on the grid. Uses a synthesis FFT of length grid.points
/// (coefficients folded mod points, which is exact for evaluation). With
/// alias_free set, throws alias_error unless points >= 2*degree+1.
std::vector<cplx> trigpoly_eval_grid(const TrigPoly& P, const GridSpec& grid,
                                     bool alias_free = false);

/// Direct summation on the grid, O(points * terms).
std::vector<cplx> trigpoly_eval_direct(const TrigPoly& P, const GridSpec& grid);

/// ||P||_alpha = (integral |P|^alpha)^(1/alpha) by the grid's equal-weight rule.
double lp_norm_on_grid(const TrigPoly& P, double alpha, const GridSpec& grid);

/// Equal-weight mean of |v|^alpha with index-keyed compensated reduction.
double mean_abs_pow(const std::vector<cplx>& v, double alpha);

}  // namespace rudinlab
