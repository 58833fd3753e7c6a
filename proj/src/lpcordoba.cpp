#include "rudinlab/lpcordoba.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include "rudinlab/errors.hpp"
#include "rudinlab/parallel.hpp"

namespace rudinlab {

namespace {

int floor_log2(std::uint64_t v) { return std::bit_width(v) - 1; }

}  // namespace

int dyadic_block_index(std::int64_t n) {
  if (n == 0 || n == 1) return 0;
  if (n > 1) return floor_log2(static_cast<std::uint64_t>(n));
  return -(floor_log2(static_cast<std::uint64_t>(-n)) + 1);
}

TrigPoly DyadicBlocks::reassemble() const {
  TrigPoly::Coeffs c;
  for (const auto& [j, block] : blocks) {
    for (const auto& [n, v] : block.coeffs()) c.emplace(n, v);
  }
  return TrigPoly(std::move(c));
}

DyadicBlocks dyadic_split(const TrigPoly& P) {
  DyadicBlocks out;
  out.source_degree = P.degree();
  std::map<int, TrigPoly::Coeffs> parts;
  for (const auto& [n, c] : P.coeffs()) parts[dyadic_block_index(n)].emplace(n, c);
  for (auto& [j, c] : parts) out.blocks.emplace(j, TrigPoly(std::move(c)));
  return out;
}

double square_function_norm(const TrigPoly& P, double alpha, const GridSpec& grid) {
  if (!(alpha > 1.0)) throw precondition_error("square function norm needs alpha > 1");
  const auto deg = static_cast<std::size_t>(P.degree());
  if (grid.points < 2 * deg + 1) {
    std::ostringstream msg;
    msg << "grid of " << grid.points << " points aliases a degree-" << deg << " polynomial";
    throw alias_error(msg.str());
  }
  const DyadicBlocks split = dyadic_split(P);
  std::vector<double> sq(grid.points, 0.0);
  for (const auto& [j, block] : split.blocks) {
    const auto v = trigpoly_eval_grid(block, grid);
    for (std::size_t k = 0; k < sq.size(); ++k) sq[k] += std::norm(v[k]);
  }
  const double total = chunked_reduce<double>(sq.size(), 4096, [&](ChunkRange r, unsigned) {
    KahanSum<double> s;
    for (std::size_t k = r.begin; k < r.end; ++k) {
      if (sq[k] > 0.0) s.add(half_pow_from_log(sq[k], std::log(sq[k]), alpha));
    }
    return s.value();
  });
  return std::pow(total / static_cast<double>(grid.points), 1.0 / alpha);
}

// ---------------------------------------------------------------- Bernstein

DerivativeKind natural_derivative_kind(const TrigPoly& P) {
  return P.min_freq() >= 0 ? DerivativeKind::Analytic : DerivativeKind::Trigonometric;
}

namespace {

double falling_factorial(std::int64_t n, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= static_cast<double>(n - i);
  return r;
}

}  // namespace

TrigPoly derivative(const TrigPoly& P, int k, DerivativeKind kind) {
  if (k < 0) throw precondition_error("derivative order must be nonnegative");
  if (kind == DerivativeKind::Analytic && P.min_freq() < 0) {
    throw precondition_error("analytic derivative needs a nonnegative spectrum");
  }
  TrigPoly out;
  for (const auto& [m, c] : P.coeffs()) {
    cplx mult;
    if (kind == DerivativeKind::Analytic) {
      mult = falling_factorial(m, k);
    } else {
      mult = std::pow(cplx{0.0, static_cast<double>(m)}, k);
    }
    out.set(m, mult * c);
  }
  return out;
}

GridSpec bernstein_grid(std::int64_t n) {
  return GridSpec::midpoint(static_cast<std::size_t>(128 * std::max<std::int64_t>(n, 1)));
}

BernsteinRecord bernstein_check(const TrigPoly& P, double p, int k) {
  return bernstein_check(P, p, k, bernstein_grid(P.degree()));
}

BernsteinRecord bernstein_check(const TrigPoly& P, double p, int k, const GridSpec& grid) {
  if (!(p >= 1.0)) throw precondition_error("bernstein_check needs p >= 1");
  if (k < 1) throw precondition_error("bernstein_check needs k >= 1");
  const std::int64_t n = P.degree();
  if (n > 0 && k > n) throw precondition_error("bernstein_check needs k <= degree");
  const DerivativeKind kind = natural_derivative_kind(P);
  BernsteinRecord r{};
  r.kind = kind;
  r.lhs = lp_norm_on_grid(derivative(P, k, kind), p, grid);
  const double constant = kind == DerivativeKind::Analytic
                              ? falling_factorial(n, k)
                              : std::pow(static_cast<double>(n), k);
  r.rhs = constant * lp_norm_on_grid(P, p, grid);
  r.ratio = r.rhs > 0.0 ? r.lhs / r.rhs : 0.0;
  r.holds = r.lhs <= r.rhs * (1.0 + 1e-9);
  return r;
}

// ------------------------------------------------------------------ Cordoba

double cordoba_ratio(std::span<const double> a, int ell, double alpha) {
  if (a.empty()) throw precondition_error("cordoba_ratio: empty sequence");
  if (ell < 0) throw precondition_error("cordoba_ratio: ell must be >= 0");
  if (!(alpha >= 2.0) || !(alpha < 4.0)) throw precondition_error("cordoba_ratio: alpha must lie in [2,4)");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] > 0.0)) throw precondition_error("cordoba_ratio: coefficients must be positive");
    if (i > 0 && a[i] > a[i - 1]) throw precondition_error("cordoba_ratio: coefficients must be nonincreasing");
  }
  std::vector<cplx> w(a.size());
  KahanSum<double> l2;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double k = static_cast<double>(i + 1);
    const double c = std::pow(k, 2 * ell) * a[i];
    w[i] = c;
    l2.add(c * c);
  }
  const auto N = a.size();
  const double alphas[] = {alpha};
  const double mean = square_spectrum_moments(w, alphas, GridSpec::midpoint(8 * N * N)).front();
  return std::pow(mean, 1.0 / alpha) / std::sqrt(l2.value());
}

int quadratic_block_index(std::int64_t k) {
  if (k < 1) throw precondition_error("quadratic block index needs k >= 1");
  return floor_log2(static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(k));
}

std::map<int, std::vector<std::int64_t>> quadratic_block_split(const TrigPoly& P) {
  std::map<int, std::vector<std::int64_t>> out;
  for (const auto& [n, c] : P.coeffs()) {
    std::int64_t k = n > 0 ? static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(n)))) : 0;
    if (k < 1 || k * k != n) {
      std::ostringstream msg;
      msg << "frequency " << n << " is not a positive square";
      throw precondition_error(msg.str());
    }
    out[quadratic_block_index(k)].push_back(k);
  }
  return out;
}

AbelSides abel_summation(std::span<const Rational> a, std::span<const Rational> T, std::size_t lo,
                         std::size_t hi) {
  if (lo < 1 || lo >= hi || hi > a.size() || hi > T.size()) {
    throw precondition_error("abel_summation needs 1 <= lo < hi <= size");
  }
  AbelSides s;
  for (std::size_t k = lo; k < hi; ++k) s.lhs += a[k] * (T[k] - T[k - 1]);
  for (std::size_t k = lo; k + 1 < hi; ++k) s.rhs += (a[k] - a[k + 1]) * T[k];
  s.rhs += a[hi - 1] * T[hi - 1] - a[lo] * T[lo - 1];
  return s;
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

TrigPoly random_trigpoly(std::mt19937_64& rng, std::int64_t n, bool analytic) {
  if (n < 0) throw precondition_error("random_trigpoly: degree must be >= 0");
  auto draw = [&] {
    const double re = 2.0 * uniform01(rng) - 1.0;
    const double im = 2.0 * uniform01(rng) - 1.0;
    return cplx{re, im};
  };
  TrigPoly::Coeffs c;
  for (std::int64_t m = analytic ? 0 : -n; m <= n; ++m) c[m] = draw();
  while (c[n] == cplx{}) c[n] = draw();
  return TrigPoly(std::move(c));
}

std::vector<TrigPoly> random_family(std::uint64_t seed, std::size_t count, std::int64_t max_degree,
                                    bool analytic) {
  if (max_degree < 1) throw precondition_error("random_family: max_degree must be >= 1");
  std::mt19937_64 rng(seed);
  std::vector<TrigPoly> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto deg = 1 + static_cast<std::int64_t>(uniform01(rng) * static_cast<double>(max_degree));
    out.push_back(random_trigpoly(rng, deg, analytic));
  }
  return out;
}

GridSpec family_grid(std::int64_t n) {
  return GridSpec::midpoint(static_cast<std::size_t>(32 * std::max<std::int64_t>(n, 1)));
}

}  // namespace rudinlab
