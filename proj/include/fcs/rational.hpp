#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

#include "fcs/error.hpp"

namespace fcs {

// Exact rational with 64-bit numerator/denominator and an explicit +infinity
// value (used for conductance with an empty-mass side). Intermediate products
// use 128-bit integers; results that do not fit are rejected.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT
  Rational(std::int64_t num, std::int64_t den) { assign(num, den); }

  static constexpr Rational infinity() {
    Rational r;
    r.num_ = 1;
    r.den_ = 0;
    return r;
  }

  constexpr bool is_infinite() const { return den_ == 0; }
  constexpr std::int64_t num() const { return num_; }
  constexpr std::int64_t den() const { return den_; }

  double to_double() const {
    if (is_infinite()) return 1.0 / 0.0;
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    require(!a.is_infinite() && !b.is_infinite(), "rational: infinite operand");
    __int128 n = static_cast<__int128>(a.num_) * b.den_ +
                 static_cast<__int128>(b.num_) * a.den_;
    __int128 d = static_cast<__int128>(a.den_) * b.den_;
    return from_wide(n, d);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return a + Rational(-b.num_, b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    require(!a.is_infinite() && !b.is_infinite(), "rational: infinite operand");
    return from_wide(static_cast<__int128>(a.num_) * b.num_,
                     static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    require(b.num_ != 0, "rational: division by zero");
    require(!a.is_infinite() && !b.is_infinite(), "rational: infinite operand");
    return from_wide(static_cast<__int128>(a.num_) * b.den_,
                     static_cast<__int128>(a.den_) * b.num_);
  }

  friend int compare(const Rational& a, const Rational& b) {
    if (a.is_infinite() || b.is_infinite()) {
      return static_cast<int>(a.is_infinite()) - static_cast<int>(b.is_infinite());
    }
    __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
  }
  friend bool operator==(const Rational& a, const Rational& b) { return compare(a, b) == 0; }
  friend bool operator<(const Rational& a, const Rational& b) { return compare(a, b) < 0; }
  friend bool operator<=(const Rational& a, const Rational& b) { return compare(a, b) <= 0; }
  friend bool operator>(const Rational& a, const Rational& b) { return compare(a, b) > 0; }
  friend bool operator>=(const Rational& a, const Rational& b) { return compare(a, b) >= 0; }

  std::string to_string() const {
    if (is_infinite()) return "inf";
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
  }

 private:
  void assign(std::int64_t num, std::int64_t den) {
    require(den != 0, "rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    std::int64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
  }

  static Rational from_wide(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 a = n < 0 ? -n : n;
    __int128 b = d;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      n /= a;
      d /= a;
    }
    constexpr __int128 kMax = INT64_MAX;
    require(n <= kMax && n >= -kMax && d <= kMax, "rational: overflow");
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace fcs
