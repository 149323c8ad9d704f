#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "niemytzki/errors.hpp"
#include "niemytzki/profile.hpp"
#include "niemytzki/rational.hpp"

namespace niemytzki {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// ---------------------------------------------------------------------------
// U(x0, f_n): the anchor (x0, 0) together with the open region strictly
// between the translated profile graph and the height cap 1/n.

class Neighborhood {
 public:
  Neighborhood(double anchor, const Family& family, int n)
      : anchor_(anchor), family_(family), n_(n), profile_(family.profile(n)) {}

  double anchor() const { return anchor_; }
  const Family& family() const { return family_; }
  int index() const { return n_; }
  const Profile& profile() const { return profile_; }

  // Strict floating comparisons throughout; no tolerance slack.
  bool contains(const Point& p) const {
    if (p.y < 0.0) throw DomainError("neighborhood membership: point below the boundary line");
    if (p.x == anchor_ && p.y == 0.0) return true;
    if (p.y >= profile_.cap()) return false;
    const double dx = std::fabs(p.x - anchor_);
    if (dx > profile_.half_width()) return false;
    return profile_.eval(dx) < p.y;
  }

 private:
  double anchor_;
  Family family_;
  int n_;
  Profile profile_;
};

inline bool contains(const Neighborhood& neigh, const Point& p) { return neigh.contains(p); }

// U(a,f_n) and U(b,f_n) overlap exactly when the midpoint column reaches
// below the cap: f_n((b-a)/2) < 1/n, i.e. b-a < 2 a_n. Boundary case
// b-a = 2 a_n counts as disjoint (strict inequality).
inline bool neighborhoods_intersect(double a, double b, const Family& family, int n) {
  if (!(a < b)) throw ArgumentError("neighborhoods_intersect: requires a < b");
  return b - a < 2.0 * family.profile(n).half_width();
}

// ((a+b)/2, f_n((b-a)/2)): maximal ordinate of the lens, minimal ordinate
// of cl U(a) ∩ cl U(b).
inline Point saddle_point(double a, double b, const Family& family, int n) {
  if (!neighborhoods_intersect(a, b, family, n))
    throw PreconditionError("saddle_point: neighborhoods do not intersect");
  const Profile f = family.profile(n);
  return {0.5 * (a + b), f.eval(0.5 * (b - a))};
}

struct SaddleParams {
  double u = 0.0;
  double w = 0.0;
  double c = 0.0;
  double d = 0.0;
};

// ---------------------------------------------------------------------------
// The bounded component C of H \ (U(a,f_n) ∪ U(b,f_n)): membership is
// a < u < b and 0 <= w <= h(u) with the roof h(u) = min of the two
// translated profiles (+inf off their supports). Arcs and saddle are in C;
// (a,0) and (b,0) are not (they belong to the open neighborhoods).

class LensRegion {
 public:
  LensRegion(double a, double b, const Family& family, int n)
      : a_(a), b_(b), family_(family), n_(n), profile_(family.profile(n)) {
    if (a > b) throw ArgumentError("lens: requires a <= b");
  }

  double a() const { return a_; }
  double b() const { return b_; }
  const Family& family() const { return family_; }
  int index() const { return n_; }
  const Profile& profile() const { return profile_; }

  bool has_bounded_component() const {
    return a_ < b_ && b_ - a_ < 2.0 * profile_.half_width();
  }

  // min(f̄(u-a), f̄(u-b)); +inf when u is off both supports.
  double roof(double u) const {
    double h = std::numeric_limits<double>::infinity();
    const double ta = std::fabs(u - a_);
    if (ta <= profile_.half_width()) h = std::min(h, profile_.eval(ta));
    const double tb = std::fabs(u - b_);
    if (tb <= profile_.half_width()) h = std::min(h, profile_.eval(tb));
    return h;
  }

  bool in_bounded_component(const Point& p) const {
    if (p.y < 0.0) return false;
    if (!has_bounded_component()) return false;
    if (!(a_ < p.x && p.x < b_)) return false;
    return p.y <= roof(p.x);
  }

  Point saddle() const { return saddle_point(a_, b_, family_, n_); }

  // The proof's construction: c = u - f_n^{-1}(w), d = u + f_n^{-1}(w),
  // so that saddle_point(c, d) recovers (u, w).
  SaddleParams cd_parameters(const Point& p) const {
    if (!in_bounded_component(p))
      throw MembershipError("cd_parameters: point not in the bounded component");
    const double t = profile_.inverse(p.y);
    return {p.x, p.y, p.x - t, p.x + t};
  }

 private:
  double a_;
  double b_;
  Family family_;
  int n_;
  Profile profile_;
};

inline bool in_bounded_component(const Point& p, const LensRegion& lens) {
  return lens.in_bounded_component(p);
}

inline SaddleParams cd_parameters(double u, double w, const LensRegion& lens) {
  return lens.cd_parameters({u, w});
}

// ---------------------------------------------------------------------------
// Containment of profile-shaped regions. A region is determined by an
// anchor, a lower-boundary profile g, and a height cap: {(x,y): g(|x-x0|)
// < y < cap} plus the anchor. U(x0,f_inner) ⊆ U(x0,f_outer) reduces to
//   cap_inner <= cap_outer, a_inner <= a_outer,
//   f_outer <= f_inner on [0, a_inner]
// (exact algebra when both profiles are power laws, grid check with local
// refinement otherwise).

namespace detail {

// Pointwise f_lo(x) <= f_hi(x) on (0, x_max]. Grid scan, then ternary
// refinement around every local minimum of the margin, then a geometric
// sub-grid toward 0 where power-type crossings concentrate. The slack
// absorbs last-ulp rounding at touching profiles; genuine crossings are
// orders of magnitude wider.
inline bool profile_leq_on(const Profile& f_lo, const Profile& f_hi, double x_max) {
  constexpr int kGrid = 2048;
  constexpr double kRelSlack = 16.0 * std::numeric_limits<double>::epsilon();
  const auto margin = [&](double x) {
    const double lo = f_lo.eval(x), hi = f_hi.eval(x);
    return hi - lo + kRelSlack * std::max(std::fabs(lo), std::fabs(hi));
  };

  std::vector<double> d(kGrid + 1);
  for (int i = 0; i <= kGrid; ++i) {
    const double x = x_max * i / kGrid;
    d[static_cast<std::size_t>(i)] = margin(x);
    if (d[static_cast<std::size_t>(i)] < 0.0) return false;
  }
  // Refine near interior local minima of the margin.
  for (int i = 1; i < kGrid; ++i) {
    if (d[static_cast<std::size_t>(i)] > d[static_cast<std::size_t>(i - 1)] ||
        d[static_cast<std::size_t>(i)] > d[static_cast<std::size_t>(i + 1)])
      continue;
    double lo = x_max * (i - 1) / kGrid, hi = x_max * (i + 1) / kGrid;
    for (int it = 0; it < 80; ++it) {
      const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
      if (margin(m1) < margin(m2)) hi = m2; else lo = m1;
    }
    if (margin(0.5 * (lo + hi)) < 0.0) return false;
  }
  // Geometric tail toward 0: crossings of power-type profiles open up as
  // x -> 0 and a uniform grid can miss them entirely.
  double x = x_max / kGrid;
  for (int i = 0; i < 60 && x > 0.0; ++i, x *= 0.5)
    if (margin(x) < 0.0) return false;
  return true;
}

// Exact containment comparison for two power-law profiles:
// f_out(x) <= f_in(x) on (0, a_in] with f = c x^e. The ratio
// f_out/f_in = (c_out/c_in) x^{e_out - e_in} is monotone, so the
// comparison collapses to one endpoint or the coefficients.
inline bool power_law_leq_on(double c_out, const Rational& e_out, double c_in,
                             const Rational& e_in, double x_max, double cap_at_x_max) {
  if (e_out == e_in) return c_out <= c_in;
  if (e_out > e_in) return c_out * std::pow(x_max, e_out.to_double()) <= cap_at_x_max;
  return false;  // e_out < e_in: f_out dominates near 0
}

}  // namespace detail

inline bool neighborhood_contained(const Neighborhood& inner, const Neighborhood& outer) {
  if (inner.anchor() != outer.anchor())
    throw AnchorMismatch("neighborhood_contained: anchors differ");
  const Profile& fi = inner.profile();
  const Profile& fo = outer.profile();
  if (inner.index() < outer.index()) return false;  // cap: 1/n_in <= 1/n_out
  if (!(fi.half_width() <= fo.half_width())) return false;
  if (fi.is_power_law() && fo.is_power_law())
    return detail::power_law_leq_on(fo.coeff(), fo.exponent(), fi.coeff(), fi.exponent(),
                                    fi.half_width(), fi.cap());
  return detail::profile_leq_on(fo, fi, fi.half_width());
}

// ---------------------------------------------------------------------------
// Mutual refinement of two families at the anchor 0. "A refines B" means:
// for every n there is a k with U(0,A_k) ⊆ U(0,B_n). Translation
// invariance of every construction justifies the single anchor.

enum class Refinement { Equivalent, AFiner, BFiner, Incomparable, Unknown };

inline const char* refinement_name(Refinement r) {
  switch (r) {
    case Refinement::Equivalent: return "Equivalent";
    case Refinement::AFiner: return "AFiner";
    case Refinement::BFiner: return "BFiner";
    case Refinement::Incomparable: return "Incomparable";
    case Refinement::Unknown: return "Unknown";
  }
  return "Unknown";
}

struct DirectionReport {
  enum class Status { Holds, Disproved, Undecided };
  Status status = Status::Undecided;
  std::vector<std::pair<int, int>> witnesses;  // (n, k): U(0, inner_k) ⊆ U(0, outer_n)
  int failed_n = 0;
  std::string detail;
};

namespace detail {

// Closure over all k of "no inner profile fits under outer_n". Sound
// disproofs only; anything unresolved stays Undecided.
//
// Rule 1 (exponents): containment needs f_outer <= f_inner near 0, which
// fails for every k when the outer exponent is below every inner exponent
// (inner exponents: constant e; harmonic (k+1)/k with infimum 1, never
// attained; disc arcs behave as exponent 2).
//
// Rule 2 (coefficients at equal constant exponents): needs c_outer(n) <=
// c_inner(k) for some k; fails for every k when c_outer(n) is at or above
// the supremum of the inner coefficients. Tangent-form suprema are
// compared in the angle domain, where tan(alpha k/(k+1)) < tan(alpha)
// collapses to an exact parameter comparison.
inline bool refinement_disproved(const Family& inner, const Family& outer, int n,
                                 std::string* why) {
  Rational outer_exp;
  double outer_coeff = 0.0;
  if (outer.is_power_law()) {
    outer_exp = outer.descriptor()->expo(n);
    outer_coeff = outer.descriptor()->coeff(n);
  } else {
    outer_exp = Rational(2);  // disc arc: leading order x^2
    outer_coeff = 0.0;        // unused below
  }

  if (!inner.is_power_law()) {
    // disc inner, leading exponent 2
    if (outer_exp < Rational(2)) {
      *why = "outer exponent " + outer_exp.str() + " < 2 = disc exponent: profiles cross near 0 for every k";
      return true;
    }
    return false;
  }

  const auto& d = *inner.descriptor();
  if (d.exponent.form == ExponentForm::HarmonicShift) {
    if (outer_exp <= Rational(1)) {
      *why = "outer exponent " + outer_exp.str() +
             " <= 1 = inf_k (k+1)/k: profiles cross near 0 for every k";
      return true;
    }
    return false;
  }

  const Rational inner_exp = d.exponent.constant;
  if (outer_exp < inner_exp) {
    *why = "outer exponent " + outer_exp.str() + " < inner exponent " + inner_exp.str() +
           ": profiles cross near 0 for every k";
    return true;
  }
  if (outer_exp != inner_exp || !outer.is_power_law()) return false;

  switch (d.coefficient.form) {
    case CoefficientForm::Power:
      if (d.coefficient.power_exponent.sign() > 0) return false;  // unbounded coefficients
      if (outer_coeff > 1.0) {
        *why = "outer coefficient exceeds sup_k k^p = 1 (p <= 0)";
        return true;
      }
      return false;
    case CoefficientForm::Constant:
      if (outer_coeff > d.coefficient.value) {
        *why = "outer coefficient " + format_double(outer_coeff) + " > constant inner coefficient " +
               format_double(d.coefficient.value);
        return true;
      }
      return false;
    case CoefficientForm::Tangent: {
      // sup_k tan(alpha k/(k+1)) = tan(alpha), never attained; compare angles
      const double alpha = d.coefficient.value;
      const double outer_angle = outer.descriptor()->coefficient.form == CoefficientForm::Tangent
                                     ? outer.descriptor()->coefficient.value * n / (n + 1.0)
                                     : std::atan(outer_coeff);
      if (outer_angle >= alpha) {
        *why = "outer coefficient at angle " + format_double(outer_angle) +
               " >= alpha = " + format_double(alpha) + ", the unattained supremum angle of the inner coefficients";
        return true;
      }
      return false;
    }
  }
  return false;
}

inline DirectionReport refinement_direction(const Family& inner, const Family& outer,
                                            int n_max, int k_max) {
  DirectionReport rep;
  for (int n = 1; n <= n_max; ++n) {
    const Neighborhood outer_n(0.0, outer, n);
    int witness = 0;
    for (int k = 1; k <= k_max; ++k) {
      if (neighborhood_contained(Neighborhood(0.0, inner, k), outer_n)) {
        witness = k;
        break;
      }
    }
    if (witness > 0) {
      rep.witnesses.emplace_back(n, witness);
      continue;
    }
    rep.failed_n = n;
    std::string why;
    if (refinement_disproved(inner, outer, n, &why)) {
      rep.status = DirectionReport::Status::Disproved;
      rep.detail = "n=" + std::to_string(n) + ": " + why;
    } else {
      rep.status = DirectionReport::Status::Undecided;
      rep.detail = "n=" + std::to_string(n) + ": no witness k <= " + std::to_string(k_max) +
                   " and no disproof rule applies";
    }
    return rep;
  }
  rep.status = DirectionReport::Status::Holds;
  return rep;
}

}  // namespace detail

struct RefinementVerdict {
  Refinement verdict = Refinement::Unknown;
  DirectionReport a_refines_b;  // witnesses (n, k): U(0,A_k) ⊆ U(0,B_n)
  DirectionReport b_refines_a;
};

// Callers are expected to have run verify_basic on both families; this
// routine assumes the basic-family axioms.
inline RefinementVerdict mutual_refinement(const Family& a, const Family& b, int n_max,
                                           int k_max) {
  if (n_max < 1 || k_max < 1)
    throw ArgumentError("mutual_refinement: n_max and k_max must be positive");
  RefinementVerdict v;
  v.a_refines_b = detail::refinement_direction(a, b, n_max, k_max);
  v.b_refines_a = detail::refinement_direction(b, a, n_max, k_max);
  using S = DirectionReport::Status;
  const S ab = v.a_refines_b.status, ba = v.b_refines_a.status;
  if (ab == S::Holds && ba == S::Holds) v.verdict = Refinement::Equivalent;
  else if (ab == S::Holds && ba == S::Disproved) v.verdict = Refinement::AFiner;
  else if (ba == S::Holds && ab == S::Disproved) v.verdict = Refinement::BFiner;
  else if (ab == S::Disproved && ba == S::Disproved) v.verdict = Refinement::Incomparable;
  else v.verdict = Refinement::Unknown;
  return v;
}

// ---------------------------------------------------------------------------
// The coordinate map (x, y) -> (x, y^{t/s}) carries U(x0, power(s)_n) to
// a profile-shaped region with coefficient n^{t/s}, exponent t, and height
// cap (1/n)^{t/s}: from y > n|x|^s it follows y^{t/s} > n^{t/s}|x|^t.

struct PowerMapRegion {
  double anchor = 0.0;
  double coeff = 1.0;
  Rational exponent = Rational(1);
  double cap = 1.0;

  double half_width() const {
    return std::pow(cap / coeff, 1.0 / exponent.to_double());
  }

  bool contains(const Point& p) const {
    if (p.y < 0.0) throw DomainError("power map region: point below the boundary line");
    if (p.x == anchor && p.y == 0.0) return true;
    if (p.y >= cap) return false;
    return coeff * std::pow(std::fabs(p.x - anchor), exponent.to_double()) < p.y;
  }
};

inline PowerMapRegion power_map_image(const Rational& s, const Rational& t,
                                      const Neighborhood& neigh) {
  if (s.sign() <= 0 || t.sign() <= 0)
    throw ArgumentError("power_map_image: exponents must be positive");
  const Family& fam = neigh.family();
  if (!fam.is_power_law() || !fam.descriptor()->exponent.uniform() ||
      fam.descriptor()->exponent.constant != s ||
      fam.descriptor()->coefficient.form != CoefficientForm::Power ||
      fam.descriptor()->coefficient.power_exponent != Rational(1))
    throw ArgumentError("power_map_image: neighborhood must come from the power(s) family");
  const double ratio = (t / s).to_double();
  const int n = neigh.index();
  return {neigh.anchor(), std::pow(static_cast<double>(n), ratio), t,
          std::pow(1.0 / n, ratio)};
}

namespace detail {

// region1 ⊆ region2 for power-law regions with arbitrary caps; same
// reduction as neighborhood containment.
inline bool power_region_contained(const PowerMapRegion& r1, const PowerMapRegion& r2) {
  if (r1.anchor != r2.anchor) throw AnchorMismatch("power_region_contained: anchors differ");
  if (!(r1.cap <= r2.cap)) return false;
  if (!(r1.half_width() <= r2.half_width())) return false;
  return power_law_leq_on(r2.coeff, r2.exponent, r1.coeff, r1.exponent, r1.half_width(),
                          r1.cap);
}

}  // namespace detail

// The image regions {image of U(0, power(s)_n)} and the power(t) basis
// interleave: each contains a member of the other. This is the refinement
// content of the coordinate-map homeomorphism.
inline bool power_map_interleaves(const Rational& s, const Rational& t, int n_max, int k_max) {
  if (s.sign() <= 0 || t.sign() <= 0)
    throw ArgumentError("power_map_interleaves: exponents must be positive");
  const Family ps = Family::power(s);
  const Family pt = Family::power(t);
  const auto basis_region = [&](int k) {
    return PowerMapRegion{0.0, static_cast<double>(k), t, 1.0 / k};
  };
  for (int n = 1; n <= n_max; ++n) {
    const PowerMapRegion image = power_map_image(s, t, Neighborhood(0.0, ps, n));
    bool basis_in_image = false, image_in_basis = false;
    for (int k = 1; k <= k_max && !(basis_in_image && image_in_basis); ++k) {
      basis_in_image = basis_in_image || detail::power_region_contained(basis_region(k), image);
      image_in_basis = image_in_basis || detail::power_region_contained(image, basis_region(k));
    }
    if (!basis_in_image || !image_in_basis) return false;
  }
  return true;
}

}  // namespace niemytzki
