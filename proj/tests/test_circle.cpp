#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "rudinlab/circle.hpp"
#include "rudinlab/errors.hpp"
#include "rudinlab/gauss.hpp"
#include "rudinlab/quadrature.hpp"

using namespace rudinlab;

namespace {

// Composite midpoint rule with many points per oscillation.
cplx riemann_fresnel(double z0, double z1, double tau, double xi, std::size_t n) {
  const double h = (z1 - z0) / static_cast<double>(n);
  std::complex<long double> s = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double z = z0 + (static_cast<double>(k) + 0.5) * h;
    const long double ang = 2.0L * std::numbers::pi_v<long double> * (tau * z * z + xi * z);
    s += std::complex<long double>(std::cos(ang), std::sin(ang));
  }
  return cplx(static_cast<double>(s.real()), static_cast<double>(s.imag())) * h;
}

}  // namespace

TEST_SUITE("circle") {
  TEST_CASE("arc denominators and widths") {
    CHECK(max_arc_denominator(10000, 0.0) == 100);
    CHECK(max_arc_denominator(4096, 0.01) == static_cast<std::int64_t>(std::pow(4096.0, 0.49)));
    CHECK(max_arc_denominator(1, 0.01) == 1);
    const MajorArc arc = MajorArc::make(FareyFraction(1, 3), 2, 1000, 0.01);
    CHECK(arc.half_width_x == doctest::Approx(0.01 * std::pow(1000.0, -0.99)));
    CHECK(arc.half_width_t == doctest::Approx(0.01 * std::pow(1000.0, -1.99)));
    CHECK(arc.center_x() == doctest::Approx(2.0 / 3.0));
    CHECK_THROWS_AS(MajorArc::make(FareyFraction(1, 3), 3, 1000, 0.01), precondition_error);
    CHECK_THROWS_AS(MajorArc::make(FareyFraction(1, 3), 0, 1000, 0.0), precondition_error);
    ArcOptions zero;
    zero.allow_eps_zero = true;
    CHECK_NOTHROW(MajorArc::make(FareyFraction(1, 3), 0, 1000, 0.0, zero));
    CHECK_THROWS_AS(MajorArc::make(FareyFraction(1, 50), 0, 1000, 0.01), precondition_error);
    CHECK_THROWS_AS(FareyFraction(2, 4), precondition_error);
    CHECK_THROWS_AS(FareyFraction(0, 3), precondition_error);
  }

  TEST_CASE("arc enumeration counts") {
    // sum over q <= 5 of phi(q) * q = 2 + 6 + 8 + 20
    CHECK(enumerate_major_arcs(4096, 0.01, 5).size() == 36);
    ArcOptions filt;
    filt.parity_filter = true;
    // q=2: one odd b; q=4: two even b per a
    CHECK(enumerate_major_arcs(4096, 0.01, 5, filt).size() == 1 + 6 + 4 + 20);
    filt.include_origin = true;
    CHECK(enumerate_major_arcs(4096, 0.01, 5, filt).size() == 32);
    CHECK_THROWS_AS(enumerate_major_arcs(100, 0.01, 20), precondition_error);
  }

  TEST_CASE("major arcs are disjoint up to N^(1/2-eps), overlap detected beyond") {
    for (const std::int64_t N : {1000, 4096, 100000}) {
      const auto arcs = enumerate_major_arcs(N, 0.01, max_arc_denominator(N, 0.01));
      const auto rep = check_disjoint(arcs);
      CHECK(rep.disjoint);
      CHECK_FALSE(rep.undecided);
    }
    // brute force pairwise on a small family
    const auto arcs = enumerate_major_arcs(2000, 0.01, 12);
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      for (std::size_t j = i + 1; j < arcs.size(); ++j) {
        auto circ = [](double u, double v) {
          const double d = std::abs(u - v);
          return std::min(d, 1.0 - d);
        };
        const bool apart_t = circ(arcs[i].center_t.value(), arcs[j].center_t.value()) > 2.0 * arcs[i].half_width_t;
        const bool apart_x = circ(arcs[i].center_x(), arcs[j].center_x()) > 2.0 * arcs[i].half_width_x;
        CHECK((apart_t || apart_x));
      }
    }
    // identical centers overlap
    const MajorArc a = MajorArc::make(FareyFraction(1, 3), 0, 1000, 0.01);
    const auto rep = check_disjoint({a, a});
    CHECK_FALSE(rep.disjoint);
    REQUIRE(rep.overlap.has_value());
    CHECK(rep.overlap->first == 0);
    CHECK(rep.overlap->second == 1);
  }

  TEST_CASE("Gauss-Kronrod rule and adaptive driver") {
    const auto r = gk15([](double x) { return cplx(std::exp(x), 0.0); }, 0.0, 1.0);
    CHECK(r.value.real() == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
    const auto s = adaptive_gk15([](double x) { return cplx(std::sqrt(x), 0.0); }, {0.0, 1.0}, 1e-12, 10000);
    CHECK(s.converged);
    CHECK(s.value.real() == doctest::Approx(2.0 / 3.0).epsilon(1e-11));
  }

  TEST_CASE("Fresnel integral against a fine Riemann sum") {
    struct Case {
      double z0, z1, tau, xi;
    };
    for (const Case c : {Case{0.0, 10.0, 0.05, 0.3}, Case{3.0, 400.0, 1e-4, -0.01}, Case{-5.0, 5.0, 0.5, 0.0},
                         Case{10.0, 2000.0, 2e-6, 0.001}}) {
      const auto q = fresnel_integral(c.z0, c.z1, c.tau, c.xi, 1e-10);
      CHECK(q.converged);
      const cplx ref = riemann_fresnel(c.z0, c.z1, c.tau, c.xi, 2'000'000);
      CHECK(std::abs(q.value - ref) < 1e-6);
    }
    // tau = xi = 0: the length
    CHECK(std::abs(fresnel_integral(1.0, 7.5, 0.0, 0.0).value - cplx(6.5, 0.0)) < 1e-12);
    CHECK_THROWS_AS(fresnel_integral(2.0, 1.0, 0.1, 0.0), precondition_error);
  }

  TEST_CASE("S_N at arc centers is (N/q) S(a,b,q) up to O(q)") {
    ArcOptions filt;
    filt.parity_filter = true;
    for (const auto& arc : enumerate_major_arcs(4096, 0.01, 13, filt)) {
      const auto r = arc_center_sum_check(arc, 4.0);
      CHECK(r.within_bound);
      // the remainder is a partial Gauss sum, at most q terms
      CHECK(r.abs_diff <= static_cast<double>(arc.q()));
    }
    const MajorArc vanishing = MajorArc::make(FareyFraction(1, 4), 1, 4096, 0.01);
    CHECK_THROWS_AS(arc_center_sum_check(vanishing), precondition_error);
  }

  TEST_CASE("arc scan: size of S_N on the arc") {
    const std::int64_t N = 1024;
    const MajorArc arc = MajorArc::make(FareyFraction(1, 3), 0, N, 0.01);
    const auto scan = arc_sup_inf_scan(arc, GridSpec::midpoint(17), GridSpec::midpoint(17));
    CHECK(scan.max_abs <= scan.upper_bound);
    CHECK(scan.min_abs >= 0.5 * scan.scale);
    CHECK(scan.max_abs >= scan.min_abs);
    CHECK(scan.scale == doctest::Approx(N / std::sqrt(3.0)));
    // arcs are narrower than one resolution step, so even a single node is fine
    CHECK_NOTHROW(arc_sup_inf_scan(arc, GridSpec::midpoint(1), GridSpec::midpoint(1)));
  }

  TEST_CASE("Euler summation decomposition of the residue-class sum") {
    const std::int64_t N = 4096;
    const double eps = 0.01;
    for (const std::int64_t q : {3, 5, 7}) {
      const double wx = 0.01 * std::pow(static_cast<double>(N), eps - 1.0);
      const double wt = 0.01 * std::pow(static_cast<double>(N), eps - 2.0);
      for (const double frac_t : {-1.0, -0.3, 0.0, 0.7, 1.0}) {
        for (const double frac_x : {-1.0, 0.0, 0.5}) {
          const double tau = frac_t * wt;
          // the residue-class sum sees the frequency q xi per unit of m; in z it is xi
          const double xi = frac_x * wx;
          for (const std::int64_t s : {std::int64_t{1}, q}) {
            const auto d = euler_decomposition(N, q, s, tau, xi, eps);
            const cplx recon = d.first_term + d.main_integral + d.correction;
            CHECK(std::abs(recon - d.direct_sum) < 1e-6 + 10 * d.quad_error);
            CHECK(std::abs(d.correction) <= d.correction_bound);
            CHECK(d.main_deviation <= 0.1 * static_cast<double>(N / q - 1));
          }
        }
      }
    }
    CHECK_THROWS_AS(euler_decomposition(10, 7, 1, 0.0, 0.0, 0.01), precondition_error);
    CHECK_THROWS_AS(euler_decomposition(100, 7, 0, 0.0, 0.0, 0.01), precondition_error);
  }
}
