#pragma once

#include <cstdint>
#include <string>

namespace rudinlab {

using i128 = __int128;

std::string to_string(i128 v);

/// Exact rational with 128-bit numerator and denominator, always reduced with
/// a positive denominator. Every operation throws std::overflow_error rather
/// than wrap.
class Rational {
 public:
  Rational() = default;
  Rational(i128 num) : num_(num), den_(1) {}  // NOLINT(implicit)
  Rational(i128 num, i128 den);

  i128 num() const { return num_; }
  i128 den() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  long double to_long_double() const;
  std::string str() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const;
  Rational& operator+=(const Rational& b) { return *this = *this + b; }

  friend bool operator==(const Rational& a, const Rational& b) = default;

 private:
  i128 num_ = 0;
  i128 den_ = 1;
};

}  // namespace rudinlab
