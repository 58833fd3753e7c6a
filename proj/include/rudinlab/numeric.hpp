#pragma once

// Fractional-turn arithmetic and compensated summation shared by every module.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

namespace rudinlab {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduces a real number to [0, 1).
inline double frac(double u) {
  double r = u - std::floor(u);
  return r >= 1.0 ? 0.0 : r;
}

/// e(u) = exp(2 pi i u) for u given in turns. Reduces mod 1 first so the
/// argument handed to sin/cos never exceeds 2 pi.
inline cplx expi_turns(double u) {
  double r = frac(u);
  // fold to (-1/2, 1/2] to keep the trig argument small
  if (r > 0.5) r -= 1.0;
  const double a = kTwoPi * r;
  return {std::cos(a), std::sin(a)};
}

/// frac(m * t) for an integer m with |m| < 2^53, accurate to about one ulp of 1.
/// The product is split with an FMA so that the integer part does not eat the
/// low-order bits of the fractional part.
inline double frac_mul(std::int64_t m, double t) {
  const double md = static_cast<double>(m);
  const double hi = md * t;
  const double lo = std::fma(md, t, -hi);
  return frac(frac(hi) + lo);
}

/// Phase n*x + n^2*t of the quadratic Weyl sum, reduced to [0,1).
inline double weyl_phase(std::int64_t n, double x, double t) {
  return frac(frac_mul(n, x) + frac_mul(n * n, t));
}

/// r2^(alpha/2) given r2 > 0 and its logarithm; exact powers for alpha in {2,4,6}.
inline double half_pow_from_log(double r2, double log_r2, double alpha) {
  if (alpha == 2.0) return r2;
  if (alpha == 4.0) return r2 * r2;
  if (alpha == 6.0) return r2 * r2 * r2;
  return std::exp(0.5 * alpha * log_r2);
}

/// |z|^alpha computed from |z|^2. Several exponents of one value share the
/// logarithm, which is how the multi-exponent scans stay consistent with this.
inline double abs_pow(cplx z, double alpha) {
  const double r2 = std::norm(z);
  if (r2 == 0.0) return 0.0;
  return half_pow_from_log(r2, std::log(r2), alpha);
}

/// Kahan-Babuska (Neumaier) compensated accumulator; order of add() calls fixes
/// the result bit-for-bit.
template <class T>
class KahanSum {
 public:
  void add(T v) {
    T s = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - s) + v;
    } else {
      comp_ += (v - s) + sum_;
    }
    sum_ = s;
  }
  T value() const { return sum_ + comp_; }

 private:
  T sum_{};
  T comp_{};
};

template <>
class KahanSum<cplx> {
 public:
  void add(cplx v) {
    re_.add(v.real());
    im_.add(v.imag());
  }
  cplx value() const { return {re_.value(), im_.value()}; }

 private:
  KahanSum<double> re_;
  KahanSum<double> im_;
};

/// Pairwise tree reduction with the tree shape fixed by element index.
template <class T>
T pairwise_sum(std::span<const T> v) {
  if (v.empty()) return T{};
  if (v.size() == 1) return v[0];
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

template <class T>
T pairwise_sum(const std::vector<T>& v) {
  return pairwise_sum(std::span<const T>(v));
}

}  // namespace rudinlab
