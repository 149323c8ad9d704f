#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "niemytzki/errors.hpp"
#include "niemytzki/rational.hpp"

namespace niemytzki {

namespace detail {
inline double step_down(double x, int ulps) {
  for (int i = 0; i < ulps; ++i)
    x = std::nextafter(x, -std::numeric_limits<double>::infinity());
  return x;
}
inline double step_up(double x, int ulps) {
  for (int i = 0; i < ulps; ++i)
    x = std::nextafter(x, std::numeric_limits<double>::infinity());
  return x;
}
}  // namespace detail

// Closed interval [lo, hi] with outward rounding. Every operation widens
// the double result by a few ulps: one past the 0.5-ulp error of a
// correctly rounded arithmetic op, four past library pow/tan/sqrt whose
// error is within ~2 ulp on this libm. That slack is orders of magnitude
// below the 1e-9 decision margin the criterion uses.
class Interval {
 public:
  Interval() : lo_(0.0), hi_(0.0) {}
  explicit Interval(double point) : lo_(point), hi_(point) {}
  Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!(lo_ <= hi_)) throw ArgumentError("Interval: lo > hi");
  }

  static Interval around(double value, int ulps) {
    return Interval(detail::step_down(value, ulps), detail::step_up(value, ulps));
  }

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double mid() const { return 0.5 * (lo_ + hi_); }
  double width() const { return hi_ - lo_; }
  bool contains(double x) const { return lo_ <= x && x <= hi_; }
  bool is_finite() const { return std::isfinite(lo_) && std::isfinite(hi_); }

  friend Interval operator+(const Interval& a, const Interval& b) {
    return Interval(detail::step_down(a.lo_ + b.lo_, 1), detail::step_up(a.hi_ + b.hi_, 1));
  }
  friend Interval operator-(const Interval& a, const Interval& b) {
    return Interval(detail::step_down(a.lo_ - b.hi_, 1), detail::step_up(a.hi_ - b.lo_, 1));
  }
  friend Interval operator*(const Interval& a, const Interval& b) {
    const double p[4] = {a.lo_ * b.lo_, a.lo_ * b.hi_, a.hi_ * b.lo_, a.hi_ * b.hi_};
    return Interval(detail::step_down(*std::min_element(p, p + 4), 1),
                    detail::step_up(*std::max_element(p, p + 4), 1));
  }
  friend Interval operator/(const Interval& a, const Interval& b) {
    if (b.lo_ <= 0.0 && b.hi_ >= 0.0)
      throw ArgumentError("Interval: division by interval containing zero");
    const double p[4] = {a.lo_ / b.lo_, a.lo_ / b.hi_, a.hi_ / b.lo_, a.hi_ / b.hi_};
    return Interval(detail::step_down(*std::min_element(p, p + 4), 1),
                    detail::step_up(*std::max_element(p, p + 4), 1));
  }

  // base^q for a positive base; monotone in the base, so the endpoints map
  // to endpoints (order flips when q < 0).
  static Interval pow(const Interval& base, const Rational& q) {
    if (base.lo_ <= 0.0)
      throw ArgumentError("Interval::pow: base must be positive");
    if (q.is_zero()) return Interval(1.0);
    const double e = q.to_double();
    double a = std::pow(base.lo_, e);
    double b = std::pow(base.hi_, e);
    if (q.sign() < 0) std::swap(a, b);
    return Interval(detail::step_down(a, 4), detail::step_up(b, 4));
  }

  // tan on (0, pi/2), where it is increasing.
  static Interval tan(double angle) {
    if (!(angle > 0.0) || !(angle < 1.5707963267948966))
      throw ArgumentError("Interval::tan: angle outside (0, pi/2)");
    return Interval(detail::step_down(std::tan(angle), 4),
                    detail::step_up(std::tan(angle), 4));
  }

  static Interval sqrt(const Interval& a) {
    if (a.lo_ < 0.0) throw ArgumentError("Interval::sqrt: negative");
    return Interval(detail::step_down(std::sqrt(a.lo_), 2),
                    detail::step_up(std::sqrt(a.hi_), 2));
  }

  friend std::ostream& operator<<(std::ostream& os, const Interval& iv) {
    return os << "[" << iv.lo_ << ", " << iv.hi_ << "]";
  }

 private:
  double lo_;
  double hi_;
};

}  // namespace niemytzki
