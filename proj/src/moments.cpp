#include "rudinlab/moments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "rudinlab/errors.hpp"
#include "rudinlab/fft.hpp"
#include "rudinlab/gauss.hpp"
#include "rudinlab/parallel.hpp"

namespace rudinlab {

std::string mode_name(const NormMode& m) {
  switch (m.index()) {
    case 0:
      return "marginal";
    case 1:
      return "double";
    default:
      return "arc";
  }
}

bool same_mode(const NormMode& a, const NormMode& b) {
  if (a.index() != b.index()) return false;
  if (const auto* ma = std::get_if<MarginalAt>(&a)) return ma->x == std::get<MarginalAt>(b).x;
  if (const auto* ra = std::get_if<ArcRestricted>(&a)) {
    const auto& rb = std::get<ArcRestricted>(b);
    return ra->xi == rb.xi && ra->arc.b == rb.arc.b && ra->arc.q() == rb.arc.q() &&
           ra->arc.a() == rb.arc.a() && ra->arc.N == rb.arc.N && ra->arc.eps == rb.arc.eps;
  }
  return true;
}

namespace {

double n2(std::int64_t N) { return static_cast<double>(N) * static_cast<double>(N); }

std::size_t arc_default_points(std::int64_t N, const MajorArc& arc) {
  const double need = std::ceil(8.0 * n2(N) * 2.0 * arc.half_width_t);
  return std::max<std::size_t>(33, static_cast<std::size_t>(need));
}

}  // namespace

QuadratureGrids default_grids(std::int64_t N, const NormMode& mode) {
  if (N < 1) throw precondition_error("N must be >= 1");
  const auto un = static_cast<std::size_t>(N);
  if (const auto* arc = std::get_if<ArcRestricted>(&mode)) {
    return {GridSpec::midpoint(arc_default_points(N, arc->arc)), GridSpec::midpoint(1)};
  }
  return {GridSpec::midpoint(8 * un * un), GridSpec::midpoint(8 * un)};
}

// ------------------------------------------------------------ exact counts

namespace {

// Squared bucket counts for k = 2. For a fixed linear sum s the square sum
// determines the unordered pair, so every bucket holds one pair.
std::uint64_t exact_k2(std::int64_t N) {
  std::uint64_t total = 0;
  for (std::int64_t s = 2; s <= 2 * N; ++s) {
    for (std::int64_t n1 = std::max<std::int64_t>(1, s - N); 2 * n1 <= s; ++n1) {
      const std::uint64_t w = (2 * n1 == s) ? 1 : 2;
      total += w * w;
    }
  }
  return total;
}

// For each linear sum s, ordered triples are bucketed by square sum in a
// dense array; the answer is the sum of squared bucket sizes.
std::uint64_t exact_k3(std::int64_t N) {
  const std::size_t qmax = static_cast<std::size_t>(3 * N * N) + 1;
  const auto sums = static_cast<std::size_t>(3 * N - 2);  // s = 3 .. 3N
  std::vector<std::vector<std::uint32_t>> scratch(std::max(1u, thread_count()));
  return chunked_reduce<std::uint64_t>(sums, 8, [&](ChunkRange r, unsigned w) {
    auto& cnt = scratch[w];
    if (cnt.empty()) cnt.assign(qmax, 0);
    std::vector<std::size_t> touched;
    std::uint64_t part = 0;
    for (std::size_t idx = r.begin; idx < r.end; ++idx) {
      const auto s = static_cast<std::int64_t>(idx) + 3;
      touched.clear();
      for (std::int64_t n1 = std::max<std::int64_t>(1, s - 2 * N); 3 * n1 <= s; ++n1) {
        const std::int64_t rest = s - n1;
        for (std::int64_t n2v = std::max(n1, rest - N); 2 * n2v <= rest; ++n2v) {
          const std::int64_t n3 = rest - n2v;
          std::uint32_t wgt = 6;
          if (n1 == n3) {
            wgt = 1;
          } else if (n1 == n2v || n2v == n3) {
            wgt = 3;
          }
          const auto Q = static_cast<std::size_t>(n1 * n1 + n2v * n2v + n3 * n3);
          if (cnt[Q] == 0) touched.push_back(Q);
          cnt[Q] += wgt;
        }
      }
      for (const std::size_t Q : touched) {
        const std::uint64_t c = cnt[Q];
        part += c * c;
        cnt[Q] = 0;
      }
    }
    return part;
  });
}

}  // namespace

std::uint64_t moment_exact_even(std::int64_t N, int k, const ExactMomentOptions& opts) {
  if (N < 1) throw precondition_error("moment_exact_even: N must be >= 1");
  if (k == 2) return exact_k2(N);
  if (k != 3) throw precondition_error("moment_exact_even: k must be 2 or 3");
  if (N > opts.max_n_k3) {
    std::ostringstream msg;
    msg << "moment_exact_even: k=3 with N=" << N << " exceeds the cap " << opts.max_n_k3;
    throw resource_error(msg.str());
  }
  return exact_k3(N);
}

NormSample exact_even_sample(std::int64_t N, int k, const ExactMomentOptions& opts) {
  NormSample s;
  s.N = N;
  s.alpha = 2.0 * k;
  s.mode = DoubleIntegral{};
  s.value = static_cast<double>(moment_exact_even(N, k, opts));
  s.exact = true;
  return s;
}

// ------------------------------------------------------------- quadrature

namespace {

void check_alphas(std::span<const double> alphas) {
  if (alphas.empty()) throw precondition_error("no exponent given");
  for (const double a : alphas) {
    if (!(a > 0.0) || !std::isfinite(a)) throw precondition_error("alpha must be positive");
  }
}

void check_budget(long double work, const NormOptions& opts, const char* what) {
  if (work > static_cast<long double>(opts.work_budget)) {
    std::ostringstream msg;
    msg << what << ": " << static_cast<double>(work) << " evaluations exceed work budget "
        << opts.work_budget;
    throw resource_error(msg.str());
  }
}

void resolution_fail(const char* axis, double step, double limit) {
  std::ostringstream msg;
  msg.precision(6);
  msg << axis << "-step " << step << " exceeds the resolution limit " << limit;
  throw resolution_error(msg.str());
}

// Rows of the double grid: for each t-node, the synthesis FFT in x of the
// terms e(n off_x + n^2 t). Only the first `rows` t-nodes are visited.
template <class Acc, class RowFn>
Acc scan_double_rows(std::int64_t N, const GridSpec& xg, const GridSpec& tg, std::size_t rows,
                     RowFn&& row_fn) {
  const auto Gx = static_cast<std::int64_t>(xg.points);
  std::vector<std::optional<SynthesisFft>> ffts(std::max(1u, thread_count()));
  std::vector<std::vector<cplx>> terms(ffts.size());
  return chunked_reduce<Acc>(rows, 16, [&](ChunkRange r, unsigned w) {
    if (!ffts[w]) {
      ffts[w].emplace(xg.points);
      terms[w].resize(static_cast<std::size_t>(N));
    }
    auto& fft = *ffts[w];
    auto& tv = terms[w];
    auto buf = fft.buffer();
    Acc acc{};
    for (std::size_t k = r.begin; k < r.end; ++k) {
      weyl_terms(xg.offset, tg.node(k), tv);
      fft.clear();
      for (std::int64_t n = 1; n <= N; ++n) buf[static_cast<std::size_t>(n % Gx)] += tv[n - 1];
      fft.execute();
      row_fn(std::span<const cplx>(buf.data(), buf.size()), acc);
    }
    return acc;
  });
}

// S(x, t+1/2) = S(x+1/2, t) and S(x, -t) = conj S(-x, t); on midpoint grids
// with Gx even and Gt = 0 mod 4 every row sum is shared by the four nodes
// t, 1/2-t, 1/2+t, 1-t, so a quarter of the rows suffices.
bool quarter_symmetric(const GridSpec& xg, const GridSpec& tg) {
  return xg.is_midpoint() && tg.is_midpoint() && xg.points % 2 == 0 && tg.points % 4 == 0;
}

std::vector<double> double_means(std::int64_t N, std::span<const double> alphas,
                                 const GridSpec& xg, const GridSpec& tg) {
  const bool quarter = quarter_symmetric(xg, tg);
  const std::size_t rows = quarter ? tg.points / 4 : tg.points;
  const double mult = quarter ? 4.0 : 1.0;
  VecSum total = scan_double_rows<VecSum>(N, xg, tg, rows, [&](std::span<const cplx> row, VecSum& acc) {
    if (acc.v.empty()) acc.v.assign(alphas.size(), 0.0);
    std::vector<KahanSum<double>> ks(alphas.size());
    for (const cplx z : row) {
      const double r2 = std::norm(z);
      if (r2 == 0.0) continue;
      const double lr = std::log(r2);
      for (std::size_t j = 0; j < alphas.size(); ++j) ks[j].add(half_pow_from_log(r2, lr, alphas[j]));
    }
    for (std::size_t j = 0; j < alphas.size(); ++j) acc.v[j] += ks[j].value();
  });
  const double denom = static_cast<double>(xg.points) * static_cast<double>(tg.points);
  for (double& v : total.v) v = v * mult / denom;
  return total.v;
}

std::vector<double> marginal_means(std::int64_t N, double x, std::span<const double> alphas,
                                   const GridSpec& tg) {
  std::vector<cplx> a(static_cast<std::size_t>(N));
  for (std::int64_t n = 1; n <= N; ++n) a[n - 1] = expi_turns(frac_mul(n, x));
  return square_spectrum_moments(a, alphas, tg);
}

std::vector<double> arc_integrals(std::int64_t N, const ArcRestricted& m,
                                  std::span<const double> alphas, const GridSpec& tg) {
  const double w = m.arc.half_width_t;
  const double x = m.arc.center_x() + m.xi;
  const double t0 = m.arc.center_t.value() - w;
  VecSum total = chunked_reduce<VecSum>(tg.points, 64, [&](ChunkRange r, unsigned) {
    std::vector<KahanSum<double>> ks(alphas.size());
    for (std::size_t k = r.begin; k < r.end; ++k) {
      const cplx z = weyl_sum(N, TorusPoint(x, t0 + 2.0 * w * tg.node(k)));
      const double r2 = std::norm(z);
      if (r2 == 0.0) continue;
      const double lr = std::log(r2);
      for (std::size_t j = 0; j < alphas.size(); ++j) ks[j].add(half_pow_from_log(r2, lr, alphas[j]));
    }
    VecSum out;
    for (auto& s : ks) out.v.push_back(s.value());
    return out;
  });
  for (double& v : total.v) v = v * 2.0 * w / static_cast<double>(tg.points);
  return total.v;
}

}  // namespace

std::vector<NormSample> moment_quadrature_multi(std::int64_t N, std::span<const double> alphas,
                                                const NormMode& mode,
                                                const std::optional<QuadratureGrids>& grids,
                                                const NormOptions& opts) {
  if (N < 1) throw precondition_error("moment_quadrature: N must be >= 1");
  check_alphas(alphas);
  const QuadratureGrids g = grids ? *grids : default_grids(N, mode);
  const double nn = n2(N);

  NormSample proto;
  proto.N = N;
  proto.mode = mode;
  proto.t_grid = g.t;
  proto.x_grid = g.x;

  bool unsafe = false;
  std::vector<double> values;
  if (const auto* arc = std::get_if<ArcRestricted>(&mode)) {
    if (arc->arc.N != N) throw precondition_error("arc was built for a different N");
    proto.t_step = 2.0 * arc->arc.half_width_t / static_cast<double>(g.t.points);
    if (proto.t_step > 1.0 / (8.0 * nn)) {
      if (!opts.unsafe) resolution_fail("t", proto.t_step, 1.0 / (8.0 * nn));
      unsafe = true;
    }
    check_budget(static_cast<long double>(g.t.points) * N, opts, "arc quadrature");
    values = arc_integrals(N, *arc, alphas, g.t);
  } else {
    proto.t_step = g.t.step();
    if (proto.t_step > 1.0 / (8.0 * nn)) {
      if (!opts.unsafe) resolution_fail("t", proto.t_step, 1.0 / (8.0 * nn));
      unsafe = true;
    }
    if (const auto* marg = std::get_if<MarginalAt>(&mode)) {
      check_budget(static_cast<long double>(g.t.points), opts, "marginal quadrature");
      values = marginal_means(N, marg->x, alphas, g.t);
    } else {
      proto.x_step = g.x.step();
      if (proto.x_step > 1.0 / (8.0 * static_cast<double>(N))) {
        if (!opts.unsafe) resolution_fail("x", proto.x_step, 1.0 / (8.0 * static_cast<double>(N)));
        unsafe = true;
      }
      if (N > opts.max_double_n) {
        std::ostringstream msg;
        msg << "double quadrature: N=" << N << " exceeds the cap " << opts.max_double_n;
        throw resource_error(msg.str());
      }
      check_budget(static_cast<long double>(g.t.points) * g.x.points, opts, "double quadrature");
      values = double_means(N, alphas, g.x, g.t);
    }
  }

  std::vector<NormSample> out;
  for (std::size_t j = 0; j < alphas.size(); ++j) {
    NormSample s = proto;
    s.alpha = alphas[j];
    s.value = values[j];
    s.unsafe = unsafe;
    out.push_back(std::move(s));
  }
  return out;
}

NormSample moment_quadrature(std::int64_t N, double alpha, const NormMode& mode,
                             const std::optional<QuadratureGrids>& grids, const NormOptions& opts) {
  const double one[] = {alpha};
  return moment_quadrature_multi(N, one, mode, grids, opts).front();
}

// ------------------------------------------------------------ sup over x

std::vector<Fraction> default_x_candidates(std::int64_t N, std::int64_t qmax, bool parity_filter) {
  if (N < 1) throw precondition_error("N must be >= 1");
  if (qmax < 1) throw precondition_error("qmax must be >= 1");
  std::int64_t qcap = static_cast<std::int64_t>(std::sqrt(static_cast<double>(N)));
  while (qcap * qcap > N) --qcap;
  while ((qcap + 1) * (qcap + 1) <= N) ++qcap;
  qcap = std::min(qcap, qmax);
  std::vector<Fraction> out;
  for (std::int64_t q = 1; q <= qcap; ++q) {
    for (std::int64_t b = 0; b < q; ++b) {
      if (std::gcd(b, q) != 1) continue;
      if (parity_filter && !is_admissible(q, b)) continue;
      out.push_back({b, q});
    }
  }
  return out;
}

namespace {

void check_candidates(std::int64_t N, std::span<const Fraction> candidates) {
  if (candidates.empty()) throw precondition_error("candidate list is empty");
  for (const auto& c : candidates) {
    if (c.den < 1 || c.num < 0 || c.num >= c.den || std::gcd(c.num, c.den) != 1) {
      throw precondition_error("candidates must be reduced fractions in [0,1)");
    }
    if (c.den * c.den > N) {
      std::ostringstream msg;
      msg << "candidate " << c.num << "/" << c.den << " has q^2 > N=" << N;
      throw precondition_error(msg.str());
    }
  }
}

}  // namespace

SupScan marginal_sup_scan(std::int64_t N, double alpha, std::span<const Fraction> candidates,
                          const NormOptions& opts) {
  check_candidates(N, candidates);
  SupScan out;
  // x and 1-x give conjugate-reflected values on the symmetric t-grid
  std::map<std::pair<std::int64_t, std::int64_t>, NormSample> cache;
  for (const auto& c : candidates) {
    const std::pair<std::int64_t, std::int64_t> key{std::min(c.num, (c.den - c.num) % c.den), c.den};
    auto it = cache.find(key);
    if (it == cache.end()) {
      it = cache.emplace(key, moment_quadrature(N, alpha, MarginalAt{c.value()}, std::nullopt, opts)).first;
    }
    NormSample s = it->second;
    s.mode = MarginalAt{c.value()};
    if (out.samples.empty() || s.value > out.best.value) {
      out.best = s;
      out.x = c;
    }
    out.samples.push_back(std::move(s));
  }
  return out;
}

// ----------------------------------------------------------- Rudin ratio

double rudin_ratio(std::int64_t N, double alpha, const CoeffMode& coeffs) {
  if (N < 1) throw precondition_error("rudin_ratio: N must be >= 1");
  if (!(alpha > 0.0) || !(alpha < 4.0)) throw precondition_error("rudin_ratio: alpha must lie in (0,4)");
  std::vector<cplx> a(static_cast<std::size_t>(N));
  if (std::holds_alternative<ConstantCoeffs>(coeffs)) {
    std::fill(a.begin(), a.end(), cplx{1.0, 0.0});
  } else if (const auto* m = std::get_if<ModulatedCoeffs>(&coeffs)) {
    for (std::int64_t n = 1; n <= N; ++n) a[n - 1] = expi_turns(frac_mul(n, m->x));
  } else {
    const auto& seq = std::get<SequenceCoeffs>(coeffs).a;
    if (static_cast<std::int64_t>(seq.size()) != N) {
      throw precondition_error("rudin_ratio: sequence length must equal N");
    }
    for (std::size_t i = 0; i < seq.size(); ++i) {
      if (!(seq[i] > 0.0)) throw precondition_error("rudin_ratio: coefficients must be positive");
      if (i > 0 && seq[i] > seq[i - 1]) throw precondition_error("rudin_ratio: coefficients must be nonincreasing");
      a[i] = seq[i];
    }
  }
  KahanSum<double> l2;
  for (const cplx c : a) l2.add(std::norm(c));
  const auto un = static_cast<std::size_t>(N);
  const double alphas[] = {alpha};
  const double mean = square_spectrum_moments(a, alphas, GridSpec::midpoint(8 * un * un)).front();
  return std::pow(mean, 1.0 / alpha) / std::sqrt(l2.value());
}

RatioSup rudin_ratio_sup(std::int64_t N, double alpha, std::span<const Fraction> candidates) {
  if (!(alpha > 0.0) || !(alpha < 4.0)) throw precondition_error("rudin_ratio: alpha must lie in (0,4)");
  const SupScan scan = marginal_sup_scan(N, alpha, candidates);
  return {std::pow(scan.best.value, 1.0 / alpha) / std::sqrt(static_cast<double>(N)), scan.x};
}

// ------------------------------------------------------------------ fits

FitResult fit_power_law(std::span<const double> N, std::span<const double> values, bool divide_log) {
  if (N.size() != values.size()) throw precondition_error("fit: size mismatch");
  if (N.size() < 3) throw precondition_error("fit: need at least 3 samples");
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < N.size(); ++i) {
    if (!(N[i] > 0.0) || !(values[i] > 0.0)) throw precondition_error("fit: N and values must be positive");
    if (divide_log && !(N[i] > 1.0)) throw precondition_error("fit: dividing by log N needs N > 1");
    for (std::size_t j = 0; j < i; ++j) {
      if (N[j] == N[i]) throw precondition_error("fit: N values must be distinct");
    }
    const double lx = std::log(N[i]);
    xs.push_back(lx);
    ys.push_back(std::log(divide_log ? values[i] / lx : values[i]));
  }
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  FitResult r;
  r.exponent = sxy / sxx;
  r.intercept = my - r.exponent * mx;
  r.with_log_factor = divide_log;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    r.max_residual = std::max(r.max_residual, std::abs(ys[i] - (r.intercept + r.exponent * xs[i])));
  }
  return r;
}

FitResult fit_exponent(std::span<const NormSample> samples, bool divide_log) {
  if (samples.size() < 3) throw precondition_error("fit: need at least 3 samples");
  std::vector<double> N;
  std::vector<double> v;
  for (const auto& s : samples) {
    if (s.alpha != samples.front().alpha) throw precondition_error("fit: samples mix exponents");
    if (!same_mode(s.mode, samples.front().mode)) throw precondition_error("fit: samples mix modes");
    N.push_back(static_cast<double>(s.N));
    v.push_back(s.value);
  }
  return fit_power_law(N, v, divide_log);
}

// ------------------------------------------------------------- level sets

double level_set_fraction(std::int64_t N, double a, double b,
                          const std::optional<QuadratureGrids>& grids, const NormOptions& opts) {
  if (N < 1) throw precondition_error("level_set_fraction: N must be >= 1");
  if (!(a > 0.0)) throw precondition_error("level_set_fraction: need a > 0");
  if (!(b > a)) throw precondition_error("level_set_fraction: need a < b");
  const QuadratureGrids g = grids ? *grids : default_grids(N, DoubleIntegral{});
  check_budget(static_cast<long double>(g.t.points) * g.x.points, opts, "level set scan");
  const double root = std::sqrt(static_cast<double>(N));
  const double lo = a * root;
  const double hi = b * root;
  const bool quarter = quarter_symmetric(g.x, g.t);
  const std::size_t rows = quarter ? g.t.points / 4 : g.t.points;
  const std::uint64_t hits =
      scan_double_rows<std::uint64_t>(N, g.x, g.t, rows, [&](std::span<const cplx> row, std::uint64_t& acc) {
        for (const cplx z : row) {
          const double m = std::abs(z);
          if (m >= lo && m <= hi) ++acc;
        }
      });
  const double total = static_cast<double>(g.t.points) * static_cast<double>(g.x.points);
  return static_cast<double>(hits) * (quarter ? 4.0 : 1.0) / total;
}

}  // namespace rudinlab
