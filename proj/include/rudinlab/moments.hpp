#pragma once

// L^alpha norms of Weyl sums: exact even moments by Diophantine counting,
// midpoint quadrature for any alpha, Rudin ratios for quadratic-spectrum
// polynomials, and log-log exponent fits.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "rudinlab/circle.hpp"
#include "rudinlab/expsum.hpp"

namespace rudinlab {

/// t-integral at a fixed x.
struct MarginalAt {
  double x = 0.0;
};
/// Integral over the whole torus.
struct DoubleIntegral {};
/// t-integral over the arc's t-interval at x = b/q + xi.
struct ArcRestricted {
  MajorArc arc;
  double xi = 0.0;
};

using NormMode = std::variant<MarginalAt, DoubleIntegral, ArcRestricted>;

/// "marginal", "double" or "arc".
std::string mode_name(const NormMode& m);
/// Same kind and same parameters.
bool same_mode(const NormMode& a, const NormMode& b);

/// Quadrature nodes. For arc mode the t-grid on [0,1) is mapped affinely onto
/// the arc's t-interval; x is used only in double mode.
struct QuadratureGrids {
  GridSpec t;
  GridSpec x;
};

/// Midpoint grids at the minimum safe resolution: 8N^2 t-nodes, 8N x-nodes;
/// arc mode uses max(33, ceil(8N^2 * arc length)) t-nodes.
QuadratureGrids default_grids(std::int64_t N, const NormMode& mode);

struct NormOptions {
  /// Accept grids coarser than the resolution rule; the sample is marked.
  bool unsafe = false;
  std::uint64_t work_budget = kDefaultWorkBudget;
  std::int64_t max_double_n = 2048;
};

struct NormSample {
  std::int64_t N = 1;
  double alpha = 2.0;
  NormMode mode;
  /// The integral of |S_N|^alpha, not its alpha-th root.
  double value = 0.0;
  GridSpec t_grid;
  GridSpec x_grid;
  double t_step = 0.0;  // in t units (arc mode: physical step on the arc)
  double x_step = 0.0;  // 0 unless double mode
  bool exact = false;   // produced by Diophantine counting
  bool unsafe = false;
};

struct ExactMomentOptions {
  std::int64_t max_n_k3 = 512;
};

/// Number of 2k-tuples in [1,N]^(2k) with equal linear sums and equal square
/// sums across the two halves, k in {2,3}. Equals the double integral of
/// |S_N|^(2k). Throws resource_error for k = 3 and N above the cap.
std::uint64_t moment_exact_even(std::int64_t N, int k, const ExactMomentOptions& opts = {});

/// Exact count packaged as a double-mode sample with alpha = 2k.
NormSample exact_even_sample(std::int64_t N, int k, const ExactMomentOptions& opts = {});

NormSample moment_quadrature(std::int64_t N, double alpha, const NormMode& mode,
                             const std::optional<QuadratureGrids>& grids = std::nullopt,
                             const NormOptions& opts = {});

/// Several exponents from a single scan; element i matches alphas[i].
std::vector<NormSample> moment_quadrature_multi(std::int64_t N, std::span<const double> alphas,
                                                const NormMode& mode,
                                                const std::optional<QuadratureGrids>& grids =
                                                    std::nullopt,
                                                const NormOptions& opts = {});

/// Non-negative fraction num/den, den >= 1, reduced.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

/// Reduced b/q in [0,1) with q <= min(qmax, floor(sqrt N)), ordered by (q, b).
/// The parity filter drops those whose Gauss sums all vanish (q = 0 mod 4).
std::vector<Fraction> default_x_candidates(std::int64_t N, std::int64_t qmax = 7,
                                           bool parity_filter = true);

struct SupScan {
  NormSample best;
  Fraction x;
  std::vector<NormSample> samples;  // one per candidate, in candidate order
};

/// Marginal t-integral at each candidate x; the maximum and where it occurs
/// (first candidate on ties). x and 1-x give the same integral, so each such
/// pair is evaluated once.
SupScan marginal_sup_scan(std::int64_t N, double alpha, std::span<const Fraction> candidates,
                          const NormOptions& opts = {});

struct ConstantCoeffs {};
struct ModulatedCoeffs {
  double x = 0.0;
};
struct SequenceCoeffs {
  std::vector<double> a;  // a[k-1] multiplies e(k^2 theta)
};
using CoeffMode = std::variant<ConstantCoeffs, ModulatedCoeffs, SequenceCoeffs>;

/// ||sum a_k e(k^2 theta)||_alpha / ||.||_2 with 8N^2 midpoint theta-nodes.
/// Requires 0 < alpha < 4; a supplied sequence must be positive and
/// nonincreasing with length N.
double rudin_ratio(std::int64_t N, double alpha, const CoeffMode& coeffs);

/// max over candidates of the modulated ratio, with its maximizer.
struct RatioSup {
  double ratio;
  Fraction x;
};
RatioSup rudin_ratio_sup(std::int64_t N, double alpha, std::span<const Fraction> candidates);

struct FitResult {
  double exponent = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;
  bool with_log_factor = false;
};

/// Least squares of log(value) (or log(value / log N)) against log N.
FitResult fit_power_law(std::span<const double> N, std::span<const double> values,
                        bool divide_log);

/// Same fit on samples, which must share alpha and mode and have distinct N.
FitResult fit_exponent(std::span<const NormSample> samples, bool divide_log);

/// Fraction of double-grid nodes with a sqrt(N) <= |S_N| <= b sqrt(N).
double level_set_fraction(std::int64_t N, double a, double b,
                          const std::optional<QuadratureGrids>& grids = std::nullopt,
                          const NormOptions& opts = {});

}  // namespace rudinlab
