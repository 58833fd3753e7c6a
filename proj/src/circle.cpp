#include "rudinlab/circle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "rudinlab/errors.hpp"
#include "rudinlab/gauss.hpp"
#include "rudinlab/parallel.hpp"

namespace rudinlab {

using i128 = __int128;

// ---------------------------------------------------------- FareyFraction

FareyFraction::FareyFraction(std::int64_t a, std::int64_t q) : a_(a), q_(q) {
  if (q < 2 || a < 1 || a >= q) {
    throw precondition_error("arc center needs 1 <= a < q, got " + std::to_string(a) + "/" +
                             std::to_string(q));
  }
  if (std::gcd(a, q) != 1) {
    throw precondition_error("arc center " + std::to_string(a) + "/" + std::to_string(q) +
                             " is not reduced");
  }
}

FareyFraction FareyFraction::origin() { return FareyFraction(0, 1, true); }

// --------------------------------------------------------------- MajorArc

namespace {

void validate_eps(double eps, const ArcOptions& opts) {
  const bool zero_ok = opts.allow_eps_zero && eps == 0.0;
  if (!zero_ok && !(eps > 0.0 && eps <= 0.01)) {
    std::ostringstream msg;
    msg << "arc eps must lie in (0, 1/100], got " << eps;
    throw precondition_error(msg.str());
  }
}

double arc_half_width(std::int64_t N, double eps, double power) {
  return static_cast<double>(0.01L * std::pow(static_cast<long double>(N),
                                              static_cast<long double>(eps) - power));
}

}  // namespace

std::int64_t max_arc_denominator(std::int64_t N, double eps) {
  if (N < 1) throw precondition_error("N must be >= 1");
  const long double v =
      std::pow(static_cast<long double>(N), 0.5L - static_cast<long double>(eps));
  auto q = static_cast<std::int64_t>(std::floor(v));
  // pow can land a hair below an exact integer root
  if (static_cast<long double>(q + 1) <= v * (1.0L + 1e-15L)) ++q;
  return q;
}

MajorArc MajorArc::make(FareyFraction center_t, std::int64_t b, std::int64_t N, double eps,
                        const ArcOptions& opts) {
  validate_eps(eps, opts);
  if (N < 1) throw precondition_error("arc needs N >= 1");
  const std::int64_t q = center_t.q();
  if (b < 0 || b >= q) throw precondition_error("arc numerator b must lie in [0, q)");
  if (q > 1 && q > max_arc_denominator(N, eps)) {
    throw precondition_error("arc denominator q=" + std::to_string(q) + " exceeds N^(1/2-eps)");
  }
  return MajorArc{center_t, b, N, eps, arc_half_width(N, eps, 1.0), arc_half_width(N, eps, 2.0)};
}

TorusPoint MajorArc::at_offset(double xi, double tau) const {
  return {center_x() + xi, center_t.value() + tau};
}

std::vector<MajorArc> enumerate_major_arcs(std::int64_t N, double eps, std::int64_t qmax,
                                           const ArcOptions& opts) {
  validate_eps(eps, opts);
  if (qmax > max_arc_denominator(N, eps)) {
    throw precondition_error("qmax=" + std::to_string(qmax) + " exceeds floor(N^(1/2-eps))=" +
                             std::to_string(max_arc_denominator(N, eps)));
  }
  std::vector<MajorArc> arcs;
  if (opts.include_origin) arcs.push_back(MajorArc::make(FareyFraction::origin(), 0, N, eps, opts));
  for (std::int64_t q = 2; q <= qmax; ++q) {
    for (std::int64_t a = 1; a < q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      for (std::int64_t b = 0; b < q; ++b) {
        if (opts.parity_filter && !is_admissible(q, b)) continue;
        arcs.push_back(MajorArc::make(FareyFraction(a, q), b, N, eps, opts));
      }
    }
  }
  return arcs;
}

// ---------------------------------------------------------- disjointness

namespace {

enum class Sep { Separated, Overlapping, Unknown };

// Compares an exact integer distance numerator D (distance = D / den) with
// 2w, using an outward-rounded enclosure of 2w * den.
Sep compare_gap(i128 D, i128 den, double w) {
  const long double width = 2.0L * static_cast<long double>(w) * static_cast<long double>(den);
  const long double hi = width * (1.0L + 1e-12L);
  const long double lo = width * (1.0L - 1e-12L);
  const auto d = static_cast<long double>(D);
  // Intervals are open, so a gap equal to 2w still separates.
  if (d >= hi) return Sep::Separated;
  if (d < lo) return Sep::Overlapping;
  return Sep::Unknown;
}

// Circular distance between n1/d1 and n2/d2 on R/Z, as (numerator, denominator).
std::pair<i128, i128> circular_gap(std::int64_t n1, std::int64_t d1, std::int64_t n2,
                                   std::int64_t d2) {
  const i128 den = static_cast<i128>(d1) * d2;
  i128 diff = static_cast<i128>(n1) * d2 - static_cast<i128>(n2) * d1;
  if (diff < 0) diff = -diff;
  diff %= den;
  return {std::min(diff, den - diff), den};
}

}  // namespace

DisjointReport check_disjoint(const std::vector<MajorArc>& arcs) {
  DisjointReport report;
  if (arcs.size() < 2) return report;
  const double wx = arcs.front().half_width_x;
  const double wt = arcs.front().half_width_t;
  for (const auto& arc : arcs) {
    if (arc.N != arcs.front().N || arc.eps != arcs.front().eps) {
      throw precondition_error("check_disjoint: arcs must share N and eps");
    }
  }

  std::vector<std::size_t> order(arcs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    const i128 lhs = static_cast<i128>(arcs[l].a()) * arcs[r].q();
    const i128 rhs = static_cast<i128>(arcs[r].a()) * arcs[l].q();
    if (lhs != rhs) return lhs < rhs;
    return l < r;
  });

  auto check_pair = [&](std::size_t i, std::size_t j) {
    const auto& A = arcs[i];
    const auto& B = arcs[j];
    const auto [dt, dent] = circular_gap(A.a(), A.q(), B.a(), B.q());
    const Sep st = compare_gap(dt, dent, wt);
    if (st == Sep::Separated) return true;
    const auto [dx, denx] = circular_gap(A.b, A.q(), B.b, B.q());
    const Sep sx = compare_gap(dx, denx, wx);
    if (sx == Sep::Separated) return true;
    if (st == Sep::Unknown || sx == Sep::Unknown) report.undecided = true;
    report.disjoint = false;
    report.overlap = std::make_pair(std::min(i, j), std::max(i, j));
    return false;
  };

  // linear gap in t between sorted positions u < v
  auto linear_t_gap = [&](std::size_t u, std::size_t v) {
    const auto& A = arcs[order[u]];
    const auto& B = arcs[order[v]];
    const i128 den = static_cast<i128>(A.q()) * B.q();
    return compare_gap(static_cast<i128>(B.a()) * A.q() - static_cast<i128>(A.a()) * B.q(), den,
                       wt);
  };
  // gap going from position u up through 1 and around to position v < u
  auto wrap_t_gap = [&](std::size_t u, std::size_t v) {
    const auto& A = arcs[order[u]];
    const auto& B = arcs[order[v]];
    const i128 den = static_cast<i128>(A.q()) * B.q();
    const i128 lin = static_cast<i128>(A.a()) * B.q() - static_cast<i128>(B.a()) * A.q();
    return compare_gap(den - lin, den, wt);
  };

  const std::size_t n = order.size();
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (linear_t_gap(u, v) == Sep::Separated) break;
      if (!check_pair(order[u], order[v])) return report;
    }
  }
  for (std::size_t u = n; u-- > 1;) {
    if (wrap_t_gap(u, 0) == Sep::Separated) break;
    for (std::size_t v = 0; v < u; ++v) {
      if (wrap_t_gap(u, v) == Sep::Separated) break;
      if (!check_pair(order[u], order[v])) return report;
    }
  }
  return report;
}

// --------------------------------------------------------------- Fresnel

QuadResult fresnel_integral(double z0, double z1, double tau, double xi, double abs_tol,
                            std::size_t max_panels) {
  if (!(z0 < z1)) throw precondition_error("fresnel_integral: need z0 < z1");
  auto local_freq = [&](double z) { return std::abs(2.0 * z * tau + xi); };
  std::vector<double> cuts{z0};
  double z = z0;
  while (z < z1 && cuts.size() < max_panels) {
    double h = z1 - z;
    for (int pass = 0; pass < 4; ++pass) {
      const double f = std::max(local_freq(z), local_freq(std::min(z + h, z1)));
      if (f * h <= 1.0) break;
      h = 1.0 / f;
    }
    z = (z + h >= z1) ? z1 : z + h;
    cuts.push_back(z);
  }
  if (cuts.back() < z1) cuts.push_back(z1);
  auto integrand = [tau, xi](double s) { return expi_turns(tau * s * s + xi * s); };
  return adaptive_gk15(integrand, std::move(cuts), abs_tol, max_panels);
}

// ------------------------------------------------------ arc checks

ArcCenterCheck arc_center_sum_check(const MajorArc& arc, double c) {
  const std::int64_t q = arc.q();
  const GaussSumParams gp(arc.a(), arc.b, q);
  if (gauss_magnitude_closed_form(gp) == 0.0) {
    throw precondition_error("arc (q=" + std::to_string(q) + ", a=" + std::to_string(arc.a()) +
                             ", b=" + std::to_string(arc.b) + ") has a vanishing Gauss sum");
  }
  ArcCenterCheck r{};
  r.measured = std::abs(weyl_sum(arc.N, arc.center()));
  r.predicted = static_cast<double>(arc.N) / static_cast<double>(q) * std::abs(gauss_sum_direct(gp));
  r.ratio = r.measured / r.predicted;
  r.abs_diff = std::abs(r.measured - r.predicted);
  r.bound = c * static_cast<double>(q);
  r.within_bound = r.abs_diff <= r.bound;
  return r;
}

ArcScan arc_sup_inf_scan(const MajorArc& arc, const GridSpec& x_grid, const GridSpec& t_grid) {
  const double N = static_cast<double>(arc.N);
  const double x_step = 2.0 * arc.half_width_x / static_cast<double>(x_grid.points);
  const double t_step = 2.0 * arc.half_width_t / static_cast<double>(t_grid.points);
  if (x_step > 1.0 / (8.0 * N) || t_step > 1.0 / (8.0 * N * N)) {
    std::ostringstream msg;
    msg << "arc scan grid too coarse: x_step=" << x_step << " (max " << 1.0 / (8.0 * N)
        << "), t_step=" << t_step << " (max " << 1.0 / (8.0 * N * N) << ")";
    throw resolution_error(msg.str());
  }

  struct Extremes {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    TorusPoint at_lo;
    TorusPoint at_hi;
  };
  std::vector<Extremes> rows(t_grid.points);
  for_each_chunk(t_grid.points, 1, [&](std::size_t, ChunkRange r, unsigned) {
    for (std::size_t it = r.begin; it < r.end; ++it) {
      const double tau = arc.half_width_t * (2.0 * t_grid.node(it) - 1.0);
      Extremes e;
      for (std::size_t ix = 0; ix < x_grid.points; ++ix) {
        const double xi = arc.half_width_x * (2.0 * x_grid.node(ix) - 1.0);
        const TorusPoint p = arc.at_offset(xi, tau);
        const double v = std::abs(weyl_sum(arc.N, p));
        if (v < e.lo) {
          e.lo = v;
          e.at_lo = p;
        }
        if (v > e.hi) {
          e.hi = v;
          e.at_hi = p;
        }
      }
      rows[it] = e;
    }
  });
  Extremes all;
  for (const auto& e : rows) {
    if (e.lo < all.lo) {
      all.lo = e.lo;
      all.at_lo = e.at_lo;
    }
    if (e.hi > all.hi) {
      all.hi = e.hi;
      all.at_hi = e.at_hi;
    }
  }
  const double sq = std::sqrt(static_cast<double>(arc.q()));
  return ArcScan{all.lo, all.hi, all.at_lo, all.at_hi, N / sq,
                 2.0 * N / sq + sq * std::log(static_cast<double>(arc.q()))};
}

// ------------------------------------------------- Euler summation model

EulerDecomposition euler_decomposition(std::int64_t N, std::int64_t q, std::int64_t s, double tau,
                                       double xi, double eps) {
  if (q < 1 || s < 1 || s > q) throw precondition_error("euler_decomposition: need 1 <= s <= q");
  const std::int64_t M = N / q;
  if (M < 2) throw precondition_error("euler_decomposition: need N >= 2q");
  const double dq = static_cast<double>(q);
  const double ds = static_cast<double>(s);
  auto phase = [&](double z) { return expi_turns(z * z * tau + z * xi); };

  EulerDecomposition d{};
  KahanSum<cplx> direct;
  for (std::int64_t m = 1; m <= M; ++m) direct.add(phase(static_cast<double>(m * q + s)));
  d.direct_sum = direct.value();
  d.first_term = phase(dq + ds);

  const double z_lo = dq + ds;
  const double z_hi = static_cast<double>(M * q + s);
  const auto main = fresnel_integral(z_lo, z_hi, tau, xi, 1e-10);
  d.main_integral = main.value / dq;
  d.main_deviation = std::abs(d.main_integral - static_cast<double>(M - 1));

  // the sawtooth {(z-s)/q} restarts at every z = s + m q
  std::vector<double> cuts;
  cuts.reserve(static_cast<std::size_t>(M));
  for (std::int64_t m = 1; m <= M; ++m) cuts.push_back(static_cast<double>(m * q + s));
  auto integrand = [&](double z) {
    const double u = (z - ds) / dq;
    return (u - std::floor(u)) * (2.0 * z * tau + xi) * phase(z);
  };
  const auto corr = adaptive_gk15(integrand, std::move(cuts), 1e-10, 4 * static_cast<std::size_t>(M) + 1000);
  d.correction = cplx(0.0, kTwoPi) * corr.value;
  d.quad_error = main.error_estimate / dq + kTwoPi * corr.error_estimate;

  const double n_eps = std::pow(static_cast<double>(N), eps);
  d.correction_bound = 10.0 * std::numbers::pi / dq * n_eps;
  d.main_bound = 6.0 / dq * n_eps;
  return d;
}

}  // namespace rudinlab
