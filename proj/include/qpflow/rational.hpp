#ifndef QPFLOW_RATIONAL_HPP
#define QPFLOW_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qpflow {

// Exact rational arithmetic on int64 numerator/denominator.
//
// All positions and times on the exact code path (profiles, edges, masses,
// Rankine-Hugoniot residuals) are small rationals: denominators stay at 4 or
// below for pipeline times and at most a few hundred for test grids, so int64
// never comes close to overflow.  Invariants: den > 0, gcd(num, den) == 1.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num(n), den(1) {}
  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num * b.num, a.den * b.den);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num == 0) throw std::invalid_argument("Rational: division by zero");
    return Rational(a.num * b.den, a.den * b.num);
  }
  Rational operator-() const {
    Rational r;
    r.num = -num;
    r.den = den;
    return r;
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  // Largest integer <= num/den (works for negative values too).
  std::int64_t floor() const {
    std::int64_t q = num / den;
    if (num % den != 0 && num < 0) --q;
    return q;
  }

  bool is_integer() const { return den == 1; }

  // Exact decimal string when the denominator is of the form 2^a * 5^b
  // (covers every value the pipeline produces: quarters and halves),
  // "num/den" otherwise.
  std::string str() const {
    std::int64_t d = den;
    int twos = 0, fives = 0;
    while (d % 2 == 0) {
      d /= 2;
      ++twos;
    }
    while (d % 5 == 0) {
      d /= 5;
      ++fives;
    }
    if (d != 1) return std::to_string(num) + "/" + std::to_string(den);
    // Scale to 10^k with k = max(twos, fives).
    const int k = twos > fives ? twos : fives;
    std::int64_t scaled = num;
    for (int i = 0; i < k - twos; ++i) scaled *= 2;
    for (int i = 0; i < k - fives; ++i) scaled *= 5;
    const bool neg = scaled < 0;
    std::string digits = std::to_string(neg ? -scaled : scaled);
    if (k == 0) return (neg ? "-" : "") + digits;
    while (digits.size() <= static_cast<std::size_t>(k))
      digits.insert(digits.begin(), '0');
    digits.insert(digits.end() - k, '.');
    return (neg ? "-" : "") + digits;
  }
};

// Parses "7", "-3.25", or "5/4".  Throws std::invalid_argument on junk.
Rational parse_rational(const std::string& text);

}  // namespace qpflow

#endif  // QPFLOW_RATIONAL_HPP
