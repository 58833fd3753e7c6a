#include "rudinlab/expsum.hpp"

#include <algorithm>
#include <sstream>

#include "rudinlab/errors.hpp"
#include "rudinlab/fft.hpp"
#include "rudinlab/parallel.hpp"

namespace rudinlab {

GridSpec GridSpec::midpoint(std::size_t points) {
  if (points == 0) throw precondition_error("grid needs at least one point");
  return {points, 0.5 / static_cast<double>(points)};
}

GridSpec GridSpec::left(std::size_t points) {
  if (points == 0) throw precondition_error("grid needs at least one point");
  return {points, 0.0};
}

double GridSpec::node(std::size_t k) const {
  const double p = static_cast<double>(points);
  return frac((static_cast<double>(k) + offset * p) / p);
}

bool GridSpec::is_midpoint() const {
  return offset * static_cast<double>(points) == 0.5;
}

// ---------------------------------------------------------------- TrigPoly

TrigPoly::TrigPoly(Coeffs c) {
  for (auto& [n, v] : c) {
    if (v != cplx{}) coeffs_.emplace(n, v);
  }
}

TrigPoly::TrigPoly(std::initializer_list<std::pair<const std::int64_t, cplx>> init)
    : TrigPoly(Coeffs(init)) {}

cplx TrigPoly::coeff(std::int64_t n) const {
  auto it = coeffs_.find(n);
  return it == coeffs_.end() ? cplx{} : it->second;
}

void TrigPoly::set(std::int64_t n, cplx c) {
  if (c == cplx{}) {
    coeffs_.erase(n);
  } else {
    coeffs_[n] = c;
  }
}

void TrigPoly::add(std::int64_t n, cplx c) { set(n, coeff(n) + c); }

std::int64_t TrigPoly::degree() const {
  if (coeffs_.empty()) return 0;
  return std::max(std::abs(coeffs_.begin()->first), std::abs(coeffs_.rbegin()->first));
}

std::int64_t TrigPoly::min_freq() const {
  return coeffs_.empty() ? 0 : coeffs_.begin()->first;
}

std::int64_t TrigPoly::max_freq() const {
  return coeffs_.empty() ? 0 : coeffs_.rbegin()->first;
}

double TrigPoly::l1_norm() const {
  KahanSum<double> s;
  for (const auto& [n, c] : coeffs_) s.add(std::abs(c));
  return s.value();
}

double TrigPoly::l2_norm() const {
  KahanSum<double> s;
  for (const auto& [n, c] : coeffs_) s.add(std::norm(c));
  return std::sqrt(s.value());
}

cplx TrigPoly::operator()(double theta) const {
  KahanSum<cplx> s;
  for (const auto& [n, c] : coeffs_) s.add(c * expi_turns(frac_mul(n, theta)));
  return s.value();
}

TrigPoly operator+(const TrigPoly& a, const TrigPoly& b) {
  TrigPoly r = a;
  for (const auto& [n, c] : b.coeffs()) r.add(n, c);
  return r;
}

TrigPoly operator-(const TrigPoly& a, const TrigPoly& b) {
  TrigPoly r = a;
  for (const auto& [n, c] : b.coeffs()) r.add(n, -c);
  return r;
}

TrigPoly operator*(cplx s, const TrigPoly& p) {
  TrigPoly r;
  for (const auto& [n, c] : p.coeffs()) r.set(n, s * c);
  return r;
}

// --------------------------------------------------------------- Weyl sums

cplx weyl_sum(std::int64_t N, TorusPoint p) {
  if (N < 1) throw precondition_error("weyl_sum: N must be >= 1");
  const cplx rot = expi_turns(frac_mul(2, p.t));
  KahanSum<cplx> acc;
  for (std::int64_t n0 = 1; n0 <= N; n0 += kPhaseAnchorStride) {
    const std::int64_t n1 = std::min(N, n0 + kPhaseAnchorStride - 1);
    cplx z = expi_turns(weyl_phase(n0, p.x, p.t));
    // first difference of the phase at n0: x + (2 n0 + 1) t
    cplx w = expi_turns(p.x + frac_mul(2 * n0 + 1, p.t));
    for (std::int64_t n = n0; n <= n1; ++n) {
      acc.add(z);
      z *= w;
      w *= rot;
    }
  }
  return acc.value();
}

cplx weyl_sum_naive(std::int64_t N, TorusPoint p) {
  if (N < 1) throw precondition_error("weyl_sum: N must be >= 1");
  KahanSum<cplx> acc;
  for (std::int64_t n = 1; n <= N; ++n) acc.add(expi_turns(weyl_phase(n, p.x, p.t)));
  return acc.value();
}

void weyl_terms(double x, double t, std::span<cplx> out) {
  x = frac(x);
  t = frac(t);
  const auto N = static_cast<std::int64_t>(out.size());
  const cplx rot = expi_turns(frac_mul(2, t));
  for (std::int64_t n0 = 1; n0 <= N; n0 += kPhaseAnchorStride) {
    const std::int64_t n1 = std::min(N, n0 + kPhaseAnchorStride - 1);
    cplx z = expi_turns(weyl_phase(n0, x, t));
    cplx w = expi_turns(x + frac_mul(2 * n0 + 1, t));
    for (std::int64_t n = n0; n <= n1; ++n) {
      out[static_cast<std::size_t>(n - 1)] = z;
      z *= w;
      w *= rot;
    }
  }
}

std::vector<cplx> weyl_sum_grid(std::int64_t N, double x, const GridSpec& t_grid,
                                std::uint64_t work_budget) {
  if (N < 1) throw precondition_error("weyl_sum_grid: N must be >= 1");
  const auto work = static_cast<long double>(t_grid.points) * static_cast<long double>(N);
  if (work > static_cast<long double>(work_budget)) {
    std::ostringstream msg;
    msg << "weyl_sum_grid: " << t_grid.points << " points x N=" << N
        << " exceeds work budget " << work_budget;
    throw resource_error(msg.str());
  }
  std::vector<cplx> out(t_grid.points);
  for_each_chunk(t_grid.points, 256, [&](std::size_t, ChunkRange r, unsigned) {
    for (std::size_t k = r.begin; k < r.end; ++k) {
      out[k] = weyl_sum(N, TorusPoint(x, t_grid.node(k)));
    }
  });
  return out;
}

// ------------------------------------------------------- grid evaluation

std::vector<cplx> trigpoly_eval_direct(const TrigPoly& P, const GridSpec& grid) {
  std::vector<cplx> out(grid.points);
  for_each_chunk(grid.points, 64, [&](std::size_t, ChunkRange r, unsigned) {
    for (std::size_t k = r.begin; k < r.end; ++k) out[k] = P(grid.node(k));
  });
  return out;
}

std::vector<cplx> trigpoly_eval_grid(const TrigPoly& P, const GridSpec& grid,
                                     bool alias_free) {
  const auto deg = static_cast<std::uint64_t>(P.degree());
  if (alias_free && grid.points < 2 * deg + 1) {
    std::ostringstream msg;
    msg << "grid of " << grid.points << " points aliases a degree-" << deg
        << " polynomial (need >= " << 2 * deg + 1 << ")";
    throw alias_error(msg.str());
  }
  if (grid.points < 32) return trigpoly_eval_direct(P, grid);

  // P(k/G + off) = sum_n [c_n e(n off)] e(n k / G): fold the pre-twiddled
  // coefficients into bins n mod G and synthesize.
  SynthesisFft fft(grid.points);
  fft.clear();
  auto buf = fft.buffer();
  const auto G = static_cast<std::int64_t>(grid.points);
  for (const auto& [n, c] : P.coeffs()) {
    const std::int64_t bin = ((n % G) + G) % G;
    buf[static_cast<std::size_t>(bin)] += c * expi_turns(frac_mul(n, grid.offset));
  }
  fft.execute();
  return {buf.begin(), buf.end()};
}

std::vector<double> square_spectrum_moments(std::span<const cplx> a, std::span<const double> alphas,
                                            const GridSpec& grid) {
  if (alphas.empty()) return {};
  for (const double al : alphas) {
    if (!(al > 0.0)) throw precondition_error("norm exponent must be positive");
  }
  SynthesisFft fft(grid.points);
  fft.clear();
  auto buf = fft.buffer();
  const auto G = static_cast<std::int64_t>(grid.points);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto k = static_cast<std::int64_t>(i) + 1;
    const std::int64_t sq = k * k;
    buf[static_cast<std::size_t>(sq % G)] += a[i] * expi_turns(frac_mul(sq, grid.offset));
  }
  fft.execute();
  const std::span<const cplx> vals = buf;
  VecSum total = chunked_reduce<VecSum>(vals.size(), 4096, [&](ChunkRange r, unsigned) {
    std::vector<KahanSum<double>> acc(alphas.size());
    for (std::size_t k = r.begin; k < r.end; ++k) {
      const double r2 = std::norm(vals[k]);
      if (r2 == 0.0) continue;
      const double lr = std::log(r2);
      for (std::size_t j = 0; j < alphas.size(); ++j) acc[j].add(half_pow_from_log(r2, lr, alphas[j]));
    }
    VecSum out;
    for (auto& s : acc) out.v.push_back(s.value());
    return out;
  });
  for (double& v : total.v) v /= static_cast<double>(grid.points);
  return total.v;
}

double mean_abs_pow(const std::vector<cplx>& v, double alpha) {
  const double total = chunked_reduce<double>(v.size(), 4096, [&](ChunkRange r, unsigned) {
    KahanSum<double> s;
    for (std::size_t k = r.begin; k < r.end; ++k) s.add(abs_pow(v[k], alpha));
    return s.value();
  });
  return total / static_cast<double>(v.size());
}

double lp_norm_on_grid(const TrigPoly& P, double alpha, const GridSpec& grid) {
  if (!(alpha > 0.0)) throw precondition_error("norm exponent must be positive");
  return std::pow(mean_abs_pow(trigpoly_eval_grid(P, grid), alpha), 1.0 / alpha);
}

}  // namespace rudinlab
