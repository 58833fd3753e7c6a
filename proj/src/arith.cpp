#include "rudinlab/arith.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rudinlab/errors.hpp"
#include "rudinlab/numeric.hpp"

namespace rudinlab {

// ------------------------------------------------------------------ sieves

namespace {

void check_cap(std::int64_t N, std::int64_t cap, const char* what) {
  if (N < 1) throw precondition_error(std::string(what) + ": N must be >= 1");
  if (N > cap) {
    std::ostringstream msg;
    msg << what << ": N=" << N << " exceeds the sieve cap " << cap;
    throw resource_error(msg.str());
  }
}

}  // namespace

std::vector<std::int64_t> totient_sieve(std::int64_t N, std::int64_t cap) {
  check_cap(N, cap, "totient_sieve");
  std::vector<std::int64_t> phi(static_cast<std::size_t>(N) + 1, 0);
  std::vector<std::int64_t> primes;
  phi[1] = 1;
  for (std::int64_t i = 2; i <= N; ++i) {
    if (phi[i] == 0) {
      phi[i] = i - 1;
      primes.push_back(i);
    }
    for (const std::int64_t p : primes) {
      const std::int64_t m = i * p;
      if (m > N) break;
      if (i % p == 0) {
        phi[m] = phi[i] * p;
        break;
      }
      phi[m] = phi[i] * (p - 1);
    }
  }
  return phi;
}

std::vector<std::int8_t> mobius_sieve(std::int64_t N, std::int64_t cap) {
  check_cap(N, cap, "mobius_sieve");
  std::vector<std::int8_t> mu(static_cast<std::size_t>(N) + 1, 0);
  std::vector<bool> composite(static_cast<std::size_t>(N) + 1, false);
  std::vector<std::int64_t> primes;
  mu[1] = 1;
  for (std::int64_t i = 2; i <= N; ++i) {
    if (!composite[i]) {
      mu[i] = -1;
      primes.push_back(i);
    }
    for (const std::int64_t p : primes) {
      const std::int64_t m = i * p;
      if (m > N) break;
      composite[m] = true;
      if (i % p == 0) {
        mu[m] = 0;
        break;
      }
      mu[m] = static_cast<std::int8_t>(-mu[i]);
    }
  }
  return mu;
}

// -------------------------------------------------------------------- zeta

namespace {

constexpr int kEmCut = 30;    // terms summed explicitly
constexpr int kEmOrder = 10;  // Bernoulli corrections B_2 .. B_20

const std::vector<long double>& even_bernoulli_over_factorial() {
  static const std::vector<long double> table = [] {
    const auto B = bernoulli_numbers(2 * kEmOrder);
    std::vector<long double> t(kEmOrder + 1, 0.0L);
    long double fact = 1.0L;
    for (int m = 1; m <= 2 * kEmOrder; ++m) {
      fact *= m;
      if (m % 2 == 0) t[m / 2] = B[m].to_long_double() / fact;
    }
    return t;
  }();
  return table;
}

}  // namespace

long double zeta_continued(long double s) {
  if (s == 1.0L) throw precondition_error("zeta has a pole at s = 1");
  if (s <= -20.0L) throw precondition_error("zeta_continued: s must exceed -20");
  const long double M = kEmCut;
  KahanSum<long double> acc;
  for (int n = kEmCut - 1; n >= 1; --n) acc.add(std::pow(static_cast<long double>(n), -s));
  acc.add(std::pow(M, 1.0L - s) / (s - 1.0L));
  acc.add(0.5L * std::pow(M, -s));
  const auto& c = even_bernoulli_over_factorial();
  long double rising = s;  // s (s+1) ... (s + 2k - 2)
  for (int k = 1; k <= kEmOrder; ++k) {
    acc.add(c[k] * rising * std::pow(M, -s - 2.0L * k + 1.0L));
    rising *= (s + 2.0L * k - 1.0L) * (s + 2.0L * k);
  }
  return acc.value();
}

long double zeta(long double s) {
  if (!(s > 1.0L)) throw precondition_error("zeta(s) requires s > 1");
  return zeta_continued(s);
}

long double zeta_derivative(long double s) {
  if (!(s > 0.0L) || s == 1.0L) throw precondition_error("zeta_derivative requires s > 0, s != 1");
  const long double M = kEmCut;
  const long double logM = std::log(M);
  KahanSum<long double> acc;
  for (int n = kEmCut - 1; n >= 2; --n) {
    const long double ln = std::log(static_cast<long double>(n));
    acc.add(-ln * std::pow(static_cast<long double>(n), -s));
  }
  const long double m1s = std::pow(M, 1.0L - s);
  acc.add(-logM * m1s / (s - 1.0L) - m1s / ((s - 1.0L) * (s - 1.0L)));
  acc.add(-0.5L * logM * std::pow(M, -s));
  const auto& c = even_bernoulli_over_factorial();
  for (int k = 1; k <= kEmOrder; ++k) {
    // P(s) = prod_{i=0}^{2k-2} (s+i), P'(s) = P(s) sum 1/(s+i)  (s > 0)
    long double P = 1.0L;
    long double inv_sum = 0.0L;
    for (int i = 0; i <= 2 * k - 2; ++i) {
      P *= (s + i);
      inv_sum += 1.0L / (s + i);
    }
    const long double power = std::pow(M, -s - 2.0L * k + 1.0L);
    acc.add(c[k] * power * (P * inv_sum - logM * P));
  }
  return acc.value();
}

long double mobius_log_constant() {
  const long double z2 = zeta(2.0L);
  return zeta_derivative(2.0L) / (z2 * z2);
}

TruncatedSum mobius_log_partial(std::int64_t M) {
  const auto mu = mobius_sieve(M);
  KahanSum<long double> acc;
  for (std::int64_t n = M; n >= 2; --n) {
    if (mu[n] == 0) continue;
    const long double dn = static_cast<long double>(n);
    acc.add(mu[n] * std::log(dn) / (dn * dn));
  }
  const long double dM = static_cast<long double>(M);
  return {acc.value(), (std::log(dM) + 1.0L) / dM};
}

ZetaConstants zeta_constants(std::span<const double> s_values) {
  ZetaConstants out;
  for (const double s : s_values) out.zeta_values.push_back(zeta(s));
  out.euler_mascheroni = kEulerMascheroni;
  out.A = mobius_log_constant();
  return out;
}

// ------------------------------------------------------ totient sums

namespace {

struct MainTerms {
  long double main;
  long double scale;
};

class TotientAsymptotics {
 public:
  explicit TotientAsymptotics(double beta) : beta_(beta) {
    if (!(beta >= 0.0)) throw precondition_error("totient sum needs beta >= 0");
    z2_ = zeta(2.0L);
    if (beta_ == 2.0) {
      constant_ = kEulerMascheroni / z2_ - mobius_log_constant();
    } else if (beta_ > 1.0) {
      constant_ = zeta_continued(beta_ - 1.0L) / zeta(beta_);
    }
  }

  MainTerms at(std::int64_t N) const {
    const long double n = static_cast<long double>(N);
    const long double logn = std::log(n);
    if (beta_ == 2.0) return {logn / z2_ + constant_, logn / n};
    const long double b = beta_;
    const long double lead = std::pow(n, 2.0L - b) / ((2.0L - b) * z2_);
    return {lead + constant_, std::pow(n, 1.0L - b) * logn};
  }

 private:
  double beta_;
  long double z2_ = 0.0L;
  long double constant_ = 0.0L;  // zero in the beta <= 1 case
};

TotientSumEstimate make_estimate(std::int64_t N, double beta, long double exact,
                                 const TotientAsymptotics& asym) {
  const auto m = asym.at(N);
  return {N, beta, exact, m.main, m.scale, std::abs(exact - m.main) / m.scale};
}

void validate_ladder(std::span<const std::int64_t> ladder) {
  if (ladder.empty()) throw precondition_error("totient ladder is empty");
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    if (ladder[i] < 2) throw precondition_error("totient sum needs N >= 2");
    if (i > 0 && ladder[i] <= ladder[i - 1]) {
      throw precondition_error("totient ladder must be strictly increasing");
    }
  }
}

}  // namespace

std::vector<TotientSumEstimate> totient_sum_ladder(std::span<const std::int64_t> ladder,
                                                   double beta) {
  validate_ladder(ladder);
  const TotientAsymptotics asym(beta);
  const auto phi = totient_sieve(ladder.back());
  std::vector<TotientSumEstimate> out;
  KahanSum<long double> acc;
  std::size_t next = 0;
  const long double b = beta;
  for (std::int64_t n = 1; n <= ladder.back(); ++n) {
    acc.add(static_cast<long double>(phi[n]) * std::pow(static_cast<long double>(n), -b));
    if (n == ladder[next]) {
      out.push_back(make_estimate(n, beta, acc.value(), asym));
      ++next;
    }
  }
  return out;
}

TotientSumEstimate totient_sum_compare(std::int64_t N, double beta) {
  const std::int64_t one[] = {N};
  return totient_sum_ladder(one, beta).front();
}

std::vector<long double> totient_ratio_decade_sup(std::span<const std::int64_t> ladder,
                                                  double beta) {
  validate_ladder(ladder);
  const TotientAsymptotics asym(beta);
  const auto phi = totient_sieve(ladder.back());
  std::vector<long double> sup(ladder.size(), 0.0L);
  KahanSum<long double> acc;
  const long double b = beta;
  for (std::int64_t n = 1; n <= ladder.back(); ++n) {
    acc.add(static_cast<long double>(phi[n]) * std::pow(static_cast<long double>(n), -b));
    if (n < 2) continue;
    for (std::size_t i = 0; i < ladder.size(); ++i) {
      if (n > ladder[i] / 10 && n <= ladder[i]) {
        sup[i] = std::max(sup[i], make_estimate(n, beta, acc.value(), asym).ratio);
      }
    }
  }
  return sup;
}

// ------------------------------------------------- Bernoulli / Faulhaber

std::vector<Rational> bernoulli_numbers(int n) {
  if (n < 0 || n > 20) throw precondition_error("Bernoulli table covers B_0..B_20");
  // binom(m+1, j) rows built incrementally
  std::vector<Rational> B(static_cast<std::size_t>(n) + 1);
  B[0] = Rational(1);
  for (int m = 1; m <= n; ++m) {
    // sum_{j=0}^{m} binom(m+1, j) B_j = 0
    Rational s(0);
    i128 binom = 1;  // binom(m+1, 0)
    for (int j = 0; j < m; ++j) {
      s += Rational(binom) * B[j];
      binom = binom * (m + 1 - j) / (j + 1);
    }
    B[m] = -s / Rational(m + 1);
  }
  return B;
}

Rational faulhaber_sum(std::int64_t N, int ell) {
  if (N < 0) throw precondition_error("faulhaber_sum: N must be >= 0");
  if (ell < 0 || ell > 20) throw precondition_error("faulhaber_sum: ell must lie in [0, 20]");
  const auto B = bernoulli_numbers(ell);
  // (1/(ell+1)) sum_{j=0}^{ell} (-1)^j binom(ell+1, j) B_j N^(ell+1-j)
  std::vector<Rational> powers(static_cast<std::size_t>(ell) + 2);
  powers[0] = Rational(1);
  for (int e = 1; e <= ell + 1; ++e) powers[e] = powers[e - 1] * Rational(N);
  Rational s(0);
  i128 binom = 1;
  for (int j = 0; j <= ell; ++j) {
    Rational term = Rational(binom) * B[j] * powers[ell + 1 - j];
    s += (j % 2 == 1) ? -term : term;
    binom = binom * (ell + 1 - j) / (j + 1);
  }
  return s / Rational(ell + 1);
}

}  // namespace rudinlab
