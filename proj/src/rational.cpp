#include "rudinlab/rational.hpp"

#include <algorithm>
#include <stdexcept>

namespace rudinlab {

namespace {

i128 abs128(i128 v) { return v < 0 ? -v : v; }

i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    const i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

i128 checked_mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("Rational: 128-bit overflow");
  return r;
}

i128 checked_add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("Rational: 128-bit overflow");
  return r;
}

}  // namespace

std::string to_string(i128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  std::string s;
  // work with negative values so the minimum does not overflow
  if (!neg) v = -v;
  while (v != 0) {
    s.push_back(static_cast<char>('0' - static_cast<int>(v % 10)));
    v /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

Rational::Rational(i128 num, i128 den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const i128 g = gcd128(num, den);
  num_ = g == 0 ? 0 : num / g;
  den_ = g == 0 ? 1 : den / g;
}

long double Rational::to_long_double() const {
  return static_cast<long double>(num_) / static_cast<long double>(den_);
}

std::string Rational::str() const {
  return den_ == 1 ? to_string(num_) : to_string(num_) + "/" + to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  const i128 g = gcd128(a.den_, b.den_);
  const i128 bd = b.den_ / g;
  const i128 ad = a.den_ / g;
  return {checked_add(checked_mul(a.num_, bd), checked_mul(b.num_, ad)), checked_mul(a.den_, bd)};
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  const i128 g1 = gcd128(a.num_, b.den_);
  const i128 g2 = gcd128(b.num_, a.den_);
  const i128 n1 = g1 == 0 ? a.num_ : a.num_ / g1;
  const i128 d2 = g1 == 0 ? b.den_ : b.den_ / g1;
  const i128 n2 = g2 == 0 ? b.num_ : b.num_ / g2;
  const i128 d1 = g2 == 0 ? a.den_ : a.den_ / g2;
  return {checked_mul(n1, n2), checked_mul(d1, d2)};
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
  return a * Rational(b.den_, b.num_);
}

Rational Rational::operator-() const {
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

}  // namespace rudinlab
