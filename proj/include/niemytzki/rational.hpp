#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>

#include "niemytzki/errors.hpp"

namespace niemytzki {

// Exact rational on int64 with overflow detection. Exponent arithmetic in
// the criterion lives entirely on small fractions like (n+1)/n, so int64
// is ample; overflow throws instead of wrapping.
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}
  Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ == 0) throw ArgumentError("Rational: zero denominator");
    normalize();
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend Rational operator-(const Rational& a) {
    return Rational(checked_neg(a.num_), a.den_);
  }
  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(checked_add(checked_mul(a.num_, b.den_), checked_mul(b.num_, a.den_)),
                    checked_mul(a.den_, b.den_));
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(checked_mul(a.num_, b.num_), checked_mul(a.den_, b.den_));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw ArgumentError("Rational: division by zero");
    return Rational(checked_mul(a.num_, b.den_), checked_mul(a.den_, b.num_));
  }

  Rational inverse() const { return Rational(1) / *this; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return checked_mul(a.num_, b.den_) < checked_mul(b.num_, a.den_);
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
  }

  // Nearest small fraction via continued-fraction expansion. Used when an
  // exponent arrives as a decimal literal (e.g. 0.5 in a family spec);
  // fails if no denominator <= max_den matches within tol.
  static Rational from_double(double x, std::int64_t max_den = 1000000,
                              double tol = 1e-9) {
    if (!std::isfinite(x)) throw ArgumentError("Rational::from_double: non-finite");
    const int sgn = x < 0 ? -1 : 1;
    double v = std::fabs(x);
    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = v;
    for (int iter = 0; iter < 64; ++iter) {
      const double fl = std::floor(frac);
      if (fl > static_cast<double>(std::numeric_limits<std::int64_t>::max() / 4)) break;
      const std::int64_t a = static_cast<std::int64_t>(fl);
      const std::int64_t p2 = checked_add(checked_mul(a, p1), p0);
      const std::int64_t q2 = checked_add(checked_mul(a, q1), q0);
      if (q2 > max_den) break;
      p0 = p1; q0 = q1; p1 = p2; q1 = q2;
      const double approx = static_cast<double>(p1) / static_cast<double>(q1);
      if (std::fabs(approx - v) <= tol * std::max(1.0, v))
        return Rational(sgn * p1, q1);
      const double rem = frac - fl;
      if (rem < 1e-15) break;
      frac = 1.0 / rem;
    }
    throw ArgumentError("Rational::from_double: " + std::to_string(x) +
                        " is not close to a small fraction");
  }

 private:
  static std::int64_t checked_neg(std::int64_t a) {
    if (a == std::numeric_limits<std::int64_t>::min())
      throw OverflowError("Rational: negate overflow");
    return -a;
  }
  static std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("Rational: add overflow");
    return r;
  }
  static std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("Rational: mul overflow");
    return r;
  }

  void normalize() {
    if (den_ < 0) { num_ = checked_neg(num_); den_ = checked_neg(den_); }
    const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) { num_ /= g; den_ /= g; }
    if (num_ == 0) den_ = 1;
  }

  std::int64_t num_;
  std::int64_t den_;
};

}  // namespace niemytzki
