#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "niemytzki/errors.hpp"
#include "niemytzki/interval.hpp"
#include "niemytzki/rational.hpp"
#include "niemytzki/util.hpp"

namespace niemytzki {

// Closed-form family tolerances. Doubles leave a wide margin at these
// scales; the bisection cap is far past the ~60 halvings that exhaust a
// double's mantissa.
inline constexpr double kTolProfile = 1e-12;   // endpoint / range slack
inline constexpr double kTolInverse = 1e-10;   // eval/inverse round trip
inline constexpr int kBisectionCap = 200;

// ---------------------------------------------------------------------------
// Power-law descriptors: f_n(x) = c_n |x|^{e_n}

enum class CoefficientForm { Power, Constant, Tangent };
enum class ExponentForm { Constant, HarmonicShift };

struct CoefficientSpec {
  CoefficientForm form = CoefficientForm::Constant;
  Rational power_exponent;  // Power: c_n = n^p
  double value = 1.0;       // Constant: c_n = value; Tangent: value = alpha, c_n = tan(alpha*n/(n+1))

  static CoefficientSpec power(Rational p) {
    return CoefficientSpec{CoefficientForm::Power, std::move(p), 0.0};
  }
  static CoefficientSpec constant(double c) {
    if (!(c > 0.0)) throw ArgumentError("coefficient constant must be positive");
    return CoefficientSpec{CoefficientForm::Constant, Rational(), c};
  }
  static CoefficientSpec tangent(double alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.5707963267948966))
      throw ArgumentError("tangent coefficient needs alpha in (0, pi/2)");
    return CoefficientSpec{CoefficientForm::Tangent, Rational(), alpha};
  }

  double at(int n) const {
    switch (form) {
      case CoefficientForm::Power:
        return std::pow(static_cast<double>(n), power_exponent.to_double());
      case CoefficientForm::Constant:
        return value;
      case CoefficientForm::Tangent:
        return std::tan(value * n / (n + 1.0));
    }
    return 0.0;
  }

  // Outward-rounded enclosure of c_n, for the criterion algebra.
  Interval interval_at(int n) const {
    switch (form) {
      case CoefficientForm::Power:
        return Interval::pow(Interval(static_cast<double>(n)), power_exponent);
      case CoefficientForm::Constant:
        return Interval(value);
      case CoefficientForm::Tangent:
        return Interval::tan(value * n / (n + 1.0));
    }
    return Interval(0.0);
  }
};

struct ExponentSpec {
  ExponentForm form = ExponentForm::Constant;
  Rational constant = Rational(2);  // Constant: e_n = constant

  static ExponentSpec constant_exponent(Rational s) {
    if (s.sign() <= 0) throw ArgumentError("exponent must be positive");
    return ExponentSpec{ExponentForm::Constant, std::move(s)};
  }
  static ExponentSpec harmonic_shift() {
    return ExponentSpec{ExponentForm::HarmonicShift, Rational()};
  }

  // Exact rational exponent e_n.
  Rational at(int n) const {
    return form == ExponentForm::Constant ? constant : Rational(n + 1, n);
  }
  bool uniform() const { return form == ExponentForm::Constant; }
};

struct PowerLawDescriptor {
  CoefficientSpec coefficient;
  ExponentSpec exponent;

  double coeff(int n) const { return coefficient.at(n); }
  Rational expo(int n) const { return exponent.at(n); }

  // a_n solves c_n a^{e_n} = 1/n.
  double half_width(int n) const {
    const double c = coeff(n);
    return std::pow(1.0 / (n * c), 1.0 / expo(n).to_double());
  }
};

// ---------------------------------------------------------------------------
// A single profile f_n: [-a_n, a_n] -> [0, 1/n]. Even by construction
// (evaluates on |x|), strictly increasing on [0, a_n], f_n(0) = 0,
// f_n(a_n) = 1/n.

class Profile {
 public:
  static Profile power_law(int n, double coeff, Rational exponent) {
    if (n < 1) throw ArgumentError("profile index must be >= 1");
    if (!(coeff > 0.0)) throw ArgumentError("profile coefficient must be positive");
    if (exponent.sign() <= 0) throw ArgumentError("profile exponent must be positive");
    Profile p;
    p.n_ = n;
    p.cap_ = 1.0 / n;
    p.coeff_ = coeff;
    p.exponent_ = exponent;
    p.exp_double_ = exponent.to_double();
    p.half_width_ = std::pow(1.0 / (n * coeff), 1.0 / p.exp_double_);
    p.is_power_law_ = true;
    return p;
  }

  // Circular arc tangent to the x-axis: f_n(x) = 1/n - sqrt(1/n^2 - x^2).
  static Profile disc(int n) {
    if (n < 1) throw ArgumentError("profile index must be >= 1");
    Profile p;
    p.n_ = n;
    p.cap_ = 1.0 / n;
    p.half_width_ = p.cap_;  // same double as the radius, so the endpoint is exact
    p.is_power_law_ = false;
    return p;
  }

  int index() const { return n_; }
  double cap() const { return cap_; }            // max value 1/n
  double half_width() const { return half_width_; }
  bool is_power_law() const { return is_power_law_; }
  double coeff() const { return coeff_; }
  const Rational& exponent() const { return exponent_; }

  // f_n(x). DomainError outside [-a_n - tol, a_n + tol].
  double eval(double x) const {
    const double ax = std::fabs(x);
    if (ax > half_width_ + kTolProfile)
      throw DomainError("profile eval: |x| > half-width");
    return shape(std::min(ax, half_width_));
  }

  // Closed-form evaluation with no domain clamp; used by algebra probes.
  double formula(double x) const { return shape(std::fabs(x)); }

  // Right-branch inverse: the unique x in [0, a_n] with f_n(x) = y.
  double inverse(double y) const {
    if (y < -kTolProfile || y > cap_ + kTolProfile)
      throw RangeError("profile inverse: y outside [0, 1/n]");
    const double yc = std::clamp(y, 0.0, cap_);
    if (is_power_law_)
      return std::pow(yc / coeff_, 1.0 / exp_double_);
    // Bisection; the profile is continuous and strictly increasing.
    double lo = 0.0, hi = half_width_;
    for (int i = 0; i < kBisectionCap && hi - lo > 0.0; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (shape(mid) < yc ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }

 private:
  double shape(double ax) const {
    if (is_power_law_) {
      // integer and half-integer exponents dominate in practice; skip the
      // libm pow for them (hot path: axiom grids and raster marking)
      if (exponent_.is_integer()) {
        const long long e = exponent_.num();
        if (e >= 1 && e <= 4) {
          double p = ax;
          for (long long i = 1; i < e; ++i) p *= ax;
          return coeff_ * p;
        }
      } else if (exponent_ == Rational(1, 2)) {
        return coeff_ * std::sqrt(ax);
      }
      return coeff_ * std::pow(ax, exp_double_);
    }
    // r - sqrt(r^2 - x^2) cancels catastrophically for x << r; the
    // algebraically equal quotient form is exact to a few ulps everywhere
    const double r = cap_;
    return ax * ax / (r + std::sqrt(std::max(0.0, r * r - ax * ax)));
  }

  int n_ = 1;
  double cap_ = 1.0;
  double half_width_ = 1.0;
  double coeff_ = 1.0;
  Rational exponent_ = Rational(2);
  double exp_double_ = 2.0;
  bool is_power_law_ = true;
};

// ---------------------------------------------------------------------------
// A basic family: the generator n -> f_n plus an optional power-law
// descriptor that the symbolic machinery (nesting check, criterion) uses.

class Family {
 public:
  enum class Kind { PowerLaw, Disc };

  static Family power_law(std::string name, PowerLawDescriptor descriptor) {
    Family f;
    f.name_ = std::move(name);
    f.kind_ = Kind::PowerLaw;
    f.descriptor_ = std::move(descriptor);
    return f;
  }

  // Builtins. parabolas: n x^2 on [-1/n, 1/n]; power(s): n|x|^s; triangles:
  // |x| tan(alpha n/(n+1)); w: |x|^{(n+1)/n}; discs: tangent circular arcs.
  static Family parabolas() {
    return power_law("parabolas", {CoefficientSpec::power(Rational(1)),
                                   ExponentSpec::constant_exponent(Rational(2))});
  }
  static Family power(const Rational& s) {
    return power_law("power(" + s.str() + ")",
                     {CoefficientSpec::power(Rational(1)),
                      ExponentSpec::constant_exponent(s)});
  }
  static Family triangles(double alpha) {
    return power_law("triangles(alpha=" + format_double(alpha) + ")",
                     {CoefficientSpec::tangent(alpha),
                      ExponentSpec::constant_exponent(Rational(1))});
  }
  static Family w() {
    return power_law("w", {CoefficientSpec::constant(1.0),
                           ExponentSpec::harmonic_shift()});
  }
  static Family discs() {
    Family f;
    f.name_ = "discs";
    f.kind_ = Kind::Disc;
    return f;
  }

  Family renamed(std::string name) const {
    Family f = *this;
    f.name_ = std::move(name);
    return f;
  }

  const std::string& name() const { return name_; }
  Kind kind() const { return kind_; }
  bool is_power_law() const { return kind_ == Kind::PowerLaw; }
  const std::optional<PowerLawDescriptor>& descriptor() const { return descriptor_; }

  Profile profile(int n) const {
    if (n < 1) throw ArgumentError("family generator needs n >= 1");
    if (kind_ == Kind::Disc) return Profile::disc(n);
    return Profile::power_law(n, descriptor_->coeff(n), descriptor_->expo(n));
  }

 private:
  std::string name_;
  Kind kind_ = Kind::PowerLaw;
  std::optional<PowerLawDescriptor> descriptor_;
};

// ---------------------------------------------------------------------------
// Axiom verification. Continuity is not decidable from samples; the report
// substitutes endpoint checks plus strict grid monotonicity and says so in
// the check names. The nested-closure axiom is checked through its 1-D
// reduction: a_n <= a_m and f_m < f_n on (0, a_n) for m < n (see
// geometry.hpp for the 2-D validation of that reduction).

struct AxiomViolation {
  int n = 0;
  int m = 0;        // second index for the nesting checks, else 0
  double x = 0.0;   // first violating sample
  double lhs = 0.0;
  double rhs = 0.0;
  std::string detail;
};

struct AxiomCheck {
  std::string axiom;
  bool passed = true;
  std::optional<AxiomViolation> violation;
};

struct AxiomReport {
  std::string family;
  int n_max = 0;
  int grid_size = 0;
  std::vector<AxiomCheck> checks;

  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }

  const AxiomCheck* find(const std::string& axiom) const {
    for (const auto& c : checks)
      if (c.axiom == axiom) return &c;
    return nullptr;
  }

  std::string text() const {
    std::string out = "axiom report for " + family + " (n_max=" +
                      std::to_string(n_max) + ", grid=" + std::to_string(grid_size) + ")\n";
    for (const auto& c : checks) {
      out += "  [" + std::string(c.passed ? "pass" : "FAIL") + "] " + c.axiom;
      if (c.violation) {
        const auto& v = *c.violation;
        out += ": n=" + std::to_string(v.n);
        if (v.m) out += " m=" + std::to_string(v.m);
        out += " x=" + format_double(v.x) + " (" + v.detail + ")";
      }
      out += "\n";
    }
    return out;
  }
};

namespace detail {

// Symbolic nested-closure test for a power-law pair (m < n):
// f_m < f_n on (0, a_n] reduces by monotonicity of the ratio to an
// endpoint or coefficient comparison.
inline bool symbolic_nesting_ok(const PowerLawDescriptor& d, int m, int n) {
  const double a_m = d.half_width(m), a_n = d.half_width(n);
  if (!(a_n <= a_m)) return false;
  const Rational em = d.expo(m), en = d.expo(n);
  if (em == en) return d.coeff(m) < d.coeff(n);
  if (em > en) {
    // ratio f_m/f_n increasing toward 0+, so it peaks at x = a_n
    const double fm = d.coeff(m) * std::pow(a_n, em.to_double());
    const double fn = 1.0 / n;  // f_n(a_n) by the range axiom
    return fm < fn;
  }
  return false;  // e_m < e_n: f_m dominates near 0
}

}  // namespace detail

// Verifies the four basic-family axioms on [1, n_max] at grid_size samples.
// Failures are report entries, never exceptions.
inline AxiomReport verify_basic(const Family& family, int n_max, int grid_size) {
  if (n_max < 2) throw ArgumentError("verify_basic: n_max must be >= 2");
  if (grid_size < 100) throw ArgumentError("verify_basic: grid_size must be >= 100");

  AxiomReport report;
  report.family = family.name();
  report.n_max = n_max;
  report.grid_size = grid_size;

  AxiomCheck endpoints{"range endpoints f_n(0)=0, f_n(a_n)=1/n"};
  AxiomCheck evenness{"evenness f_n(-x)=f_n(x)"};
  AxiomCheck monotone{"strict monotonicity on [0, a_n] (continuity proxy)"};
  AxiomCheck nesting{"nested closures (grid proxy: a_n<=a_m, f_m<f_n on (0,a_n))"};

  std::vector<Profile> profiles;
  profiles.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) profiles.push_back(family.profile(n));

  for (int n = 1; n <= n_max && (endpoints.passed || evenness.passed || monotone.passed); ++n) {
    const Profile& f = profiles[static_cast<std::size_t>(n - 1)];
    const double a = f.half_width();

    if (endpoints.passed) {
      if (std::fabs(f.eval(0.0)) > kTolProfile) {
        endpoints.passed = false;
        endpoints.violation = {n, 0, 0.0, f.eval(0.0), 0.0, "f_n(0) != 0"};
      } else if (std::fabs(f.eval(a) - f.cap()) > kTolProfile) {
        endpoints.passed = false;
        endpoints.violation = {n, 0, a, f.eval(a), f.cap(), "f_n(a_n) != 1/n"};
      }
    }

    double prev = f.eval(0.0);
    for (int i = 1; i <= grid_size; ++i) {
      const double x = a * i / grid_size;
      const double y = f.eval(x);
      if (evenness.passed && f.eval(-x) != y) {
        evenness.passed = false;
        evenness.violation = {n, 0, x, f.eval(-x), y, "f_n(-x) != f_n(x)"};
      }
      if (monotone.passed && !(y > prev)) {
        monotone.passed = false;
        monotone.violation = {n, 0, x, y, prev, "f_n not strictly increasing"};
      }
      prev = y;
    }
  }

  bool grid_nesting_all = true;
  for (int n = 2; n <= n_max && nesting.passed; ++n) {
    const Profile& fn = profiles[static_cast<std::size_t>(n - 1)];
    for (int m = 1; m < n && nesting.passed; ++m) {
      const Profile& fm = profiles[static_cast<std::size_t>(m - 1)];
      if (!(fn.half_width() <= fm.half_width())) {
        nesting.passed = grid_nesting_all = false;
        nesting.violation = {n, m, fn.half_width(), fn.half_width(), fm.half_width(),
                             "a_n > a_m"};
        break;
      }
      for (int i = 1; i < grid_size; ++i) {
        const double x = fn.half_width() * i / grid_size;
        const double lo = fm.eval(x), hi = fn.eval(x);
        if (!(lo < hi)) {
          nesting.passed = grid_nesting_all = false;
          nesting.violation = {n, m, x, lo, hi, "f_m(x) >= f_n(x)"};
          break;
        }
      }
    }
  }

  report.checks.push_back(std::move(endpoints));
  report.checks.push_back(std::move(evenness));
  report.checks.push_back(std::move(monotone));
  report.checks.push_back(std::move(nesting));

  if (family.is_power_law()) {
    AxiomCheck symbolic{"nested closures (symbolic power-law reduction)"};
    bool symbolic_all = true;
    for (int n = 2; n <= n_max && symbolic.passed; ++n) {
      for (int m = 1; m < n; ++m) {
        if (!detail::symbolic_nesting_ok(*family.descriptor(), m, n)) {
          symbolic.passed = symbolic_all = false;
          symbolic.violation = {n, m, 0.0, 0.0, 0.0, "symbolic reduction fails"};
          break;
        }
      }
    }
    report.checks.push_back(std::move(symbolic));

    AxiomCheck agree{"symbolic/grid nesting agreement"};
    if (symbolic_all != grid_nesting_all) {
      agree.passed = false;
      agree.violation = {0, 0, 0.0, 0.0, 0.0, "symbolic and grid checks disagree"};
    }
    report.checks.push_back(std::move(agree));
  }

  return report;
}

}  // namespace niemytzki
