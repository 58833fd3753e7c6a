#pragma once

// Major arcs around (b/q, a/q) and the numerical checks attached to them:
// disjointness, the size of S_N on an arc, and the Euler-summation /
// Fresnel-integral model of S_N near an arc center.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rudinlab/expsum.hpp"
#include "rudinlab/quadrature.hpp"

namespace rudinlab {

/// Reduced fraction a/q with 1 <= a < q. The single exception is the arc
/// center 0/1, available only through origin().
class FareyFraction {
 public:
  FareyFraction(std::int64_t a, std::int64_t q);
  static FareyFraction origin();

  std::int64_t a() const { return a_; }
  std::int64_t q() const { return q_; }
  double value() const { return static_cast<double>(a_) / static_cast<double>(q_); }

 private:
  FareyFraction(std::int64_t a, std::int64_t q, bool) : a_(a), q_(q) {}
  std::int64_t a_;
  std::int64_t q_;
};

struct ArcOptions {
  /// Keep only (q,b) whose Gauss sums do not vanish.
  bool parity_filter = false;
  /// Permit eps = 0 (arcs of width 10^-2 N^-1 x 10^-2 N^-2).
  bool allow_eps_zero = false;
  /// Add the arc centered at t = 0 (q = 1, a = 0, b = 0).
  bool include_origin = false;
};

/// Rectangle I(b,q) x I(a,q) with half widths 10^-2 N^(eps-1) in x and
/// 10^-2 N^(eps-2) in t, centered at (b/q, a/q).
struct MajorArc {
  FareyFraction center_t;
  std::int64_t b;
  std::int64_t N;
  double eps;
  double half_width_x;
  double half_width_t;

  static MajorArc make(FareyFraction center_t, std::int64_t b, std::int64_t N, double eps,
                       const ArcOptions& opts = {});

  std::int64_t q() const { return center_t.q(); }
  std::int64_t a() const { return center_t.a(); }
  double center_x() const { return static_cast<double>(b) / static_cast<double>(q()); }
  TorusPoint center() const { return {center_x(), center_t.value()}; }
  /// Offsets from the center: x = b/q + xi, t = a/q + tau.
  TorusPoint at_offset(double xi, double tau) const;
};

/// floor(N^(1/2 - eps)), computed with an exact integer correction.
std::int64_t max_arc_denominator(std::int64_t N, double eps);

/// All arcs with 2 <= q <= qmax, 1 <= a < q coprime to q, 0 <= b < q,
/// ordered by (q, a, b).
std::vector<MajorArc> enumerate_major_arcs(std::int64_t N, double eps, std::int64_t qmax,
                                           const ArcOptions& opts = {});

struct DisjointReport {
  bool disjoint = true;
  /// First overlapping (or not certifiably separated) pair, as indices.
  std::optional<std::pair<std::size_t, std::size_t>> overlap;
  /// True when some pair could not be decided beyond rounding and was
  /// conservatively counted as overlapping.
  bool undecided = false;
};

/// Pairwise disjointness via exact cross-multiplied center distances, with
/// an outward-rounded enclosure of the widths.
DisjointReport check_disjoint(const std::vector<MajorArc>& arcs);

/// integral_{z0}^{z1} e(tau z^2 + xi z) dz by adaptive Gauss-Kronrod; the
/// initial partition puts at most one oscillation on each panel.
QuadResult fresnel_integral(double z0, double z1, double tau, double xi, double abs_tol = 1e-8,
                            std::size_t max_panels = 200000);

struct ArcCenterCheck {
  double measured;   // |S_N(b/q, a/q)|
  double predicted;  // (N/q) |S(a,b,q)|
  double ratio;
  double abs_diff;
  double bound;  // c * q
  bool within_bound;
};

/// Compares S_N at the arc center with the Gauss-sum prediction. Throws
/// precondition_error for arcs whose Gauss sum vanishes.
ArcCenterCheck arc_center_sum_check(const MajorArc& arc, double c = 4.0);

struct ArcScan {
  double min_abs;
  double max_abs;
  TorusPoint argmin;
  TorusPoint argmax;
  double scale;        // N / sqrt(q)
  double upper_bound;  // 2 N / sqrt(q) + sqrt(q) log q
};

/// min and max of |S_N| over a sub-grid of the arc rectangle (grid nodes in
/// [0,1) are mapped affinely onto each side). Throws resolution_error if the
/// steps exceed 1/(8N) in x or 1/(8N^2) in t.
ArcScan arc_sup_inf_scan(const MajorArc& arc, const GridSpec& x_grid, const GridSpec& t_grid);

/// Euler summation of the inner sum over one residue class s near an arc:
///   sum_{m=1}^{M} f(m) = f(1) + main + correction,
/// f(y) = e((yq+s)^2 tau + (yq+s) xi), M = floor(N/q),
///   main = (1/q) integral_{q+s}^{Mq+s} e(z^2 tau + z xi) dz,
///   correction = 2 pi i integral_{q+s}^{Mq+s} {(z-s)/q} (2 z tau + xi) e(z^2 tau + z xi) dz.
struct EulerDecomposition {
  cplx direct_sum;
  cplx first_term;
  cplx main_integral;
  cplx correction;
  double main_deviation;    // |(1/q) integral (e(...) - 1) dz|
  double correction_bound;  // (10 pi / q) N^eps
  double main_bound;        // (6 / q) N^eps
  double quad_error;        // summed quadrature error estimates
};

EulerDecomposition euler_decomposition(std::int64_t N, std::int64_t q, std::int64_t s, double tau,
                                       double xi, double eps);

}  // namespace rudinlab
