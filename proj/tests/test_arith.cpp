#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "rudinlab/arith.hpp"
#include "rudinlab/errors.hpp"

using namespace rudinlab;

namespace {

std::int64_t phi_by_gcd(std::int64_t n) {
  std::int64_t c = 0;
  for (std::int64_t m = 1; m <= n; ++m) c += std::gcd(m, n) == 1;
  return c;
}

int mu_by_factoring(std::int64_t n) {
  int sign = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  if (n > 1) sign = -sign;
  return sign;
}

}  // namespace

TEST_SUITE("arith") {
  TEST_CASE("totient and Moebius sieves against definitions") {
    const auto phi = totient_sieve(2000);
    const auto mu = mobius_sieve(2000);
    CHECK(phi[0] == 0);
    CHECK(mu[0] == 0);
    for (std::int64_t n = 1; n <= 2000; ++n) {
      CHECK(phi[n] == phi_by_gcd(n));
      CHECK(mu[n] == mu_by_factoring(n));
    }
    CHECK_THROWS_AS(totient_sieve(0), precondition_error);
    CHECK_THROWS_AS(totient_sieve(1001, 1000), resource_error);
    CHECK_THROWS_AS(mobius_sieve(1001, 1000), resource_error);
  }

  TEST_CASE("zeta values") {
    const long double pi = std::numbers::pi_v<long double>;
    CHECK(static_cast<double>(zeta(2.0L)) == doctest::Approx(static_cast<double>(pi * pi / 6)).epsilon(1e-15));
    CHECK(static_cast<double>(zeta(4.0L)) ==
          doctest::Approx(static_cast<double>(pi * pi * pi * pi / 90)).epsilon(1e-15));
    CHECK(static_cast<double>(zeta(3.0L)) == doctest::Approx(1.20205690315959428540).epsilon(1e-15));
    CHECK(static_cast<double>(zeta(1.5L)) == doctest::Approx(2.61237534868548834335).epsilon(1e-15));
    CHECK(static_cast<double>(zeta_continued(0.5L)) == doctest::Approx(-1.46035450880958681289).epsilon(1e-15));
    CHECK(static_cast<double>(zeta_continued(0.0L)) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(static_cast<double>(zeta_continued(-1.0L)) == doctest::Approx(-1.0 / 12).epsilon(1e-14));
    CHECK_THROWS_AS(zeta(1.0L), precondition_error);
    CHECK_THROWS_AS(zeta(0.5L), precondition_error);
    CHECK_THROWS_AS(zeta_continued(1.0L), precondition_error);
  }

  TEST_CASE("zeta'(2) and the Moebius-log constant") {
    CHECK(static_cast<double>(zeta_derivative(2.0L)) == doctest::Approx(-0.93754825431584375370).epsilon(1e-15));
    // central difference of zeta as an independent route
    const long double h = 1e-5L;
    const long double fd = (zeta(2.0L + h) - zeta(2.0L - h)) / (2 * h);
    CHECK(std::abs(static_cast<double>(fd - zeta_derivative(2.0L))) < 1e-9);
    const long double A = mobius_log_constant();
    CHECK(static_cast<double>(A) == doctest::Approx(-0.34649473470180221335).epsilon(1e-15));
    const auto part = mobius_log_partial(1'000'000);
    CHECK(std::abs(static_cast<double>(part.value - A)) <= static_cast<double>(part.tail_bound));
    const double s[] = {2.0, 3.0};
    const auto zc = zeta_constants(s);
    CHECK(zc.zeta_values.size() == 2);
    CHECK(static_cast<double>(zc.euler_mascheroni) == doctest::Approx(0.5772156649015329));
  }

  TEST_CASE("weighted totient sums: exact part against direct sums") {
    for (const double beta : {0.0, 0.5, 1.5, 2.0, 3.0}) {
      const auto e = totient_sum_compare(500, beta);
      long double direct = 0;
      for (std::int64_t n = 1; n <= 500; ++n) {
        direct += static_cast<long double>(phi_by_gcd(n)) / std::pow(static_cast<long double>(n), beta);
      }
      CHECK(static_cast<double>(e.exact) == doctest::Approx(static_cast<double>(direct)).epsilon(1e-14));
      CHECK(std::isfinite(static_cast<double>(e.ratio)));
      CHECK(e.ratio < 5.0L);
    }
    // beta = 0: the main term is 3 N^2 / pi^2
    const auto e0 = totient_sum_compare(1000, 0.0);
    CHECK(static_cast<double>(e0.main_terms) == doctest::Approx(3e6 / (std::numbers::pi * std::numbers::pi)));
    const std::int64_t bad[] = {100, 50};
    CHECK_THROWS_AS(totient_sum_ladder(bad, 2.0), precondition_error);
    CHECK_THROWS_AS(totient_sum_compare(1, 2.0), precondition_error);
    CHECK_THROWS_AS(totient_sum_compare(10, -1.0), precondition_error);
  }

  TEST_CASE("ladder and decade supremum are consistent with pointwise ratios") {
    const std::int64_t ladder[] = {1000, 10000};
    const auto pts = totient_sum_ladder(ladder, 2.0);
    const auto sup = totient_ratio_decade_sup(ladder, 2.0);
    REQUIRE(pts.size() == 2);
    CHECK(pts[1].exact == totient_sum_compare(10000, 2.0).exact);
    for (std::size_t i = 0; i < 2; ++i) CHECK(sup[i] >= pts[i].ratio);
  }

  TEST_CASE("Bernoulli numbers") {
    const auto B = bernoulli_numbers(20);
    CHECK(B[0] == Rational(1));
    CHECK(B[1] == Rational(-1, 2));
    CHECK(B[2] == Rational(1, 6));
    CHECK(B[3] == Rational(0));
    CHECK(B[4] == Rational(-1, 30));
    CHECK(B[12] == Rational(-691, 2730));
    CHECK(B[20] == Rational(-174611, 330));
    CHECK_THROWS_AS(bernoulli_numbers(21), precondition_error);
  }

  TEST_CASE("Faulhaber sums against direct integer sums") {
    for (int ell = 0; ell <= 6; ++ell) {
      for (std::int64_t N : {0, 1, 2, 10, 97, 1000}) {
        i128 direct = 0;
        for (std::int64_t k = 1; k <= N; ++k) {
          i128 p = 1;
          for (int e = 0; e < ell; ++e) p *= k;
          direct += p;
        }
        CHECK(faulhaber_sum(N, ell) == Rational(direct));
      }
    }
    CHECK(faulhaber_sum(100, 1) == Rational(5050));
    CHECK(faulhaber_sum(10, 20).is_integer());
    CHECK_THROWS_AS(faulhaber_sum(-1, 2), precondition_error);
    CHECK_THROWS_AS(faulhaber_sum(1'000'000'000, 20), std::overflow_error);
  }

  TEST_CASE("rational arithmetic") {
    const Rational a(6, -4);
    CHECK(a.num() == -3);
    CHECK(a.den() == 2);
    CHECK(a + Rational(3, 2) == Rational(0));
    CHECK((a * Rational(2, 3)).str() == "-1");
    CHECK((a / Rational(3)).str() == "-1/2");
    CHECK(to_string(static_cast<i128>(-1234567890123LL) * 1000000) == "-1234567890123000000");
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  }
}
