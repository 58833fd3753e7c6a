#pragma once

// Generalized Gauss sums S(a,b,q) = sum_{n=1}^{q} e((a n^2 + b n)/q).
//
// The direct sum and the closed-form magnitude (which depends only on q mod 4
// and the parity of b) are independent routes; each is the other's oracle.

#include <cstdint>
#include <memory>
#include <vector>

#include "rudinlab/numeric.hpp"

namespace rudinlab {

/// Parameters of S(a,b,q). Requires gcd(a,q) = 1.
///
/// The parity of b is taken from the integer as given, before reduction mod q.
/// For odd q the residue b mod q has no well-defined parity, and the
/// closed-form magnitude is keyed on the explicit forms 2b' and 2b'+1; for
/// even q the two notions agree.
class GaussSumParams {
 public:
  GaussSumParams(std::int64_t a, std::int64_t b, std::int64_t q);

  std::int64_t a() const { return a_; }
  std::int64_t q() const { return q_; }
  /// b reduced to [0, q).
  std::int64_t b_residue() const { return b_res_; }
  bool b_odd() const { return b_odd_; }

 private:
  std::int64_t a_;
  std::int64_t q_;
  std::int64_t b_res_;
  bool b_odd_;
};

enum class ParityClass { AllB, EvenB, OddB };

const char* to_string(ParityClass c);

/// Which b give a nonvanishing sum: all b (q odd), even b (q = 0 mod 4),
/// odd b (q = 2 mod 4).
ParityClass admissible_b(std::int64_t q);
bool is_admissible(std::int64_t q, std::int64_t b);

/// Table of the q-th roots of unity e(r/q), r in [0,q). Shared and immutable.
std::shared_ptr<const std::vector<cplx>> roots_of_unity(std::int64_t q);

/// Direct summation; phase residues (a n^2 + b n) mod q are exact integers.
cplx gauss_sum_direct(const GaussSumParams& p);

/// Same sum taken over n = c+1 .. c+q.
cplx gauss_sum_shifted(const GaussSumParams& p, std::int64_t c);

/// |S(a,b,q)| from q mod 4 and the parity of b.
double gauss_magnitude_closed_form(const GaussSumParams& p);

}  // namespace rudinlab
