#include "rudinlab/gauss.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <string>

#include "rudinlab/errors.hpp"

namespace rudinlab {

namespace {
std::int64_t mod(std::int64_t v, std::int64_t q) {
  const std::int64_t r = v % q;
  return r < 0 ? r + q : r;
}
}  // namespace

GaussSumParams::GaussSumParams(std::int64_t a, std::int64_t b, std::int64_t q)
    : a_(a), q_(q), b_res_(0), b_odd_((b % 2) != 0) {
  if (q < 1) throw precondition_error("Gauss sum modulus must be >= 1");
  if (std::gcd(a, q) != 1) {
    throw precondition_error("Gauss sum requires gcd(a,q) = 1, got a=" + std::to_string(a) +
                             " q=" + std::to_string(q));
  }
  b_res_ = mod(b, q);
}

const char* to_string(ParityClass c) {
  switch (c) {
    case ParityClass::AllB: return "all";
    case ParityClass::EvenB: return "even";
    case ParityClass::OddB: return "odd";
  }
  return "?";
}

ParityClass admissible_b(std::int64_t q) {
  if (q < 1) throw precondition_error("admissible_b: q must be >= 1");
  if (q % 2 == 1) return ParityClass::AllB;
  return q % 4 == 0 ? ParityClass::EvenB : ParityClass::OddB;
}

bool is_admissible(std::int64_t q, std::int64_t b) {
  switch (admissible_b(q)) {
    case ParityClass::AllB: return true;
    case ParityClass::EvenB: return b % 2 == 0;
    case ParityClass::OddB: return b % 2 != 0;
  }
  return false;
}

std::shared_ptr<const std::vector<cplx>> roots_of_unity(std::int64_t q) {
  static std::mutex mu;
  static std::map<std::int64_t, std::shared_ptr<const std::vector<cplx>>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[q];
  if (!slot) {
    std::vector<cplx> roots(static_cast<std::size_t>(q));
    for (std::int64_t r = 0; r < q; ++r) {
      roots[static_cast<std::size_t>(r)] =
          expi_turns(static_cast<double>(r) / static_cast<double>(q));
    }
    slot = std::make_shared<const std::vector<cplx>>(std::move(roots));
  }
  return slot;
}

cplx gauss_sum_shifted(const GaussSumParams& p, std::int64_t c) {
  const std::int64_t q = p.q();
  const auto roots = roots_of_unity(q);
  const std::int64_t a = mod(p.a(), q);
  const std::int64_t b = p.b_residue();
  KahanSum<cplx> acc;
  for (std::int64_t i = 1; i <= q; ++i) {
    const std::int64_t n = mod(c + i, q);
    const std::int64_t r = mod(a * n % q * n + b * n, q);
    acc.add((*roots)[static_cast<std::size_t>(r)]);
  }
  return acc.value();
}

cplx gauss_sum_direct(const GaussSumParams& p) { return gauss_sum_shifted(p, 0); }

double gauss_magnitude_closed_form(const GaussSumParams& p) {
  const std::int64_t q = p.q();
  const double dq = static_cast<double>(q);
  if (q % 2 == 1) return std::sqrt(dq);
  const bool q_zero_mod4 = (q % 4 == 0);
  if (!p.b_odd()) return q_zero_mod4 ? std::sqrt(2.0 * dq) : 0.0;
  return q_zero_mod4 ? 0.0 : std::sqrt(2.0 * dq);
}

}  // namespace rudinlab
