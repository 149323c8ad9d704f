#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "niemytzki/errors.hpp"
#include "niemytzki/geometry.hpp"
#include "niemytzki/interval.hpp"
#include "niemytzki/profile.hpp"
#include "niemytzki/rational.hpp"
#include "niemytzki/util.hpp"

namespace niemytzki {

inline constexpr double kDefaultMargin = 1e-9;

// ---------------------------------------------------------------------------
// The comparison ratio in normal form. For power-law families
// p_n = c_n |x|^{e_n} (source) and t_k = C_k |x|^E (target, exponent
// uniform in k), the ratio
//     A_k(x) = t_k(p_m^{-1}(x) · δ(x) / p_n^{-1}(x)) / t_1(δ(x))
// collapses, with the unknown γ normalized to 1 and δ cancelling, to
//     A_k(x) = (C_k / C_1) · Q^E · x^{E (1/e_m - 1/e_n)},
//     Q = c_n^{1/e_n} / c_m^{1/e_m}.
// The coefficient is carried as an outward-rounded interval, the x
// exponent exactly as a rational.

struct ExponentTerm {
  Interval coefficient_bound;
  Rational x_exponent;

  double eval_mid(double x) const {
    return 0.5 * (coefficient_bound.lo() + coefficient_bound.hi()) *
           std::pow(x, x_exponent.to_double());
  }
};

namespace detail {

inline const PowerLawDescriptor& power_law_descriptor(const Family& family,
                                                      const char* role) {
  if (!family.is_power_law())
    throw UnsupportedFamily(std::string(role) + " family '" + family.name() +
                            "' is not power-law");
  return *family.descriptor();
}

inline Rational require_uniform_target_exponent(const Family& target) {
  const auto& d = power_law_descriptor(target, "target");
  if (!d.exponent.uniform())
    throw UnsupportedTarget("target family '" + target.name() +
                            "' has a k-dependent exponent; swap the orientation");
  return d.exponent.constant;
}

// Q = c_n^{1/e_n} / c_m^{1/e_m} over the source family, outward-rounded.
inline Interval source_scale_q(const PowerLawDescriptor& src, int n, int m) {
  const Interval qn = Interval::pow(src.coefficient.interval_at(n), src.expo(n).inverse());
  const Interval qm = Interval::pow(src.coefficient.interval_at(m), src.expo(m).inverse());
  return qn / qm;
}

}  // namespace detail

inline ExponentTerm exponent_ratio_term(const Family& source, const Family& target, int n,
                                        int m, int k) {
  if (m <= n) throw ArgumentError("exponent_ratio_term: requires m > n");
  if (n < 1 || k < 1) throw ArgumentError("exponent_ratio_term: indices must be positive");
  const auto& src = detail::power_law_descriptor(source, "source");
  const Rational e_target = detail::require_uniform_target_exponent(target);
  const auto& tgt = *target.descriptor();

  const Interval coeff_ratio = tgt.coefficient.interval_at(k) / tgt.coefficient.interval_at(1);
  const Interval q = detail::source_scale_q(src, n, m);
  const Rational x_exp = e_target * (src.expo(m).inverse() - src.expo(n).inverse());
  return {coeff_ratio * Interval::pow(q, e_target), x_exp};
}

// ---------------------------------------------------------------------------
// limsup classification of K · x^E as x -> 0+.

struct LimsupClass {
  enum class Kind { Zero, Finite, Infinite } kind;
  Interval bound;  // meaningful for Finite
};

inline LimsupClass limsup_class(const ExponentTerm& term) {
  if (term.x_exponent.sign() > 0) return {LimsupClass::Kind::Zero, Interval(0.0)};
  if (term.x_exponent.sign() < 0) return {LimsupClass::Kind::Infinite, Interval()};
  return {LimsupClass::Kind::Finite, term.coefficient_bound};
}

// ---------------------------------------------------------------------------
// Verdicts. NotHomeomorphic carries concrete witnesses n -> m for the
// searched range plus the symbolic rule that closes the argument for all
// n; Inconclusive carries the per-n reasons. Inconclusive is never a
// homeomorphy claim.

struct Witness {
  int n = 0;
  int m = 0;
  std::string reason;
};

struct OrientationReport {
  std::string source;
  std::string target;
  bool certified = false;
  std::vector<Witness> witnesses;
  std::string closure_rule;          // empty unless certified
  std::vector<std::string> reasons;  // per-n failure notes when not certified
};

struct Verdict {
  enum class Kind { NotHomeomorphic, Inconclusive } kind = Kind::Inconclusive;
  std::optional<OrientationReport> certifying;  // set when NotHomeomorphic
  std::vector<OrientationReport> orientations;  // everything that was tried
  std::vector<std::string> certificate_lines;
};

namespace detail {

// k-closure of the target coefficients: the per-k criterion bound must be
// controlled uniformly in k. sup_k C_k / C_1 for the three coefficient
// forms; power coefficients with positive exponent are unbounded.
struct KClosure {
  bool bounded = false;
  Interval sup_ratio;  // sup_k C_k / C_1, outward-rounded
  std::string note;
};

inline KClosure target_k_closure(const PowerLawDescriptor& tgt) {
  switch (tgt.coefficient.form) {
    case CoefficientForm::Tangent: {
      const double alpha = tgt.coefficient.value;
      const Interval sup = Interval::tan(alpha) / tgt.coefficient.interval_at(1);
      return {true, sup,
              "sup_k of the target coefficients is tan(alpha), approached but never attained"};
    }
    case CoefficientForm::Power:
      if (tgt.coefficient.power_exponent.sign() > 0)
        return {false, Interval(),
                "target coefficients k^" + tgt.coefficient.power_exponent.str() +
                    " are unbounded in k"};
      return {true, Interval(1.0), "target coefficients peak at k = 1"};
    case CoefficientForm::Constant:
      return {true, Interval(1.0), "target coefficients do not depend on k"};
  }
  return {false, Interval(), ""};
}

struct PairCheck {
  bool ok = false;
  std::string reason;
};

// Does m certify level n: for every k, limsup A_k < 1 - margin?
inline PairCheck check_pair(const PowerLawDescriptor& src, const Rational& e_target,
                            const KClosure& closure, int n, int m, double margin) {
  const Rational x_exp = e_target * (src.expo(m).inverse() - src.expo(n).inverse());
  if (x_exp.sign() > 0)
    return {true, "x-exponent " + x_exp.str() + " > 0, so every A_k vanishes as x -> 0+"};
  if (x_exp.sign() < 0) return {false, "x-exponent " + x_exp.str() + " < 0: A_k blows up"};
  if (!closure.bounded) return {false, closure.note + " at flat x-exponent"};
  const Interval bound =
      closure.sup_ratio * Interval::pow(source_scale_q(src, n, m), e_target);
  if (bound.hi() < 1.0 - margin)
    return {true, "sup_k limsup A_k <= " + format_double(bound.hi()) + " < 1 - margin"};
  return {false, "coefficient bound [" + format_double(bound.lo()) + ", " +
                     format_double(bound.hi()) + "] not below 1 - margin"};
}

// The two symbolic rules that extend finite-n witnesses to every n.
inline std::string all_n_closure_rule(const PowerLawDescriptor& src,
                                      const PowerLawDescriptor& tgt) {
  if (src.exponent.form == ExponentForm::HarmonicShift && tgt.exponent.uniform() &&
      tgt.exponent.constant.sign() > 0)
    return "positive x-exponent: E (m/(m+1) - n/(n+1)) > 0 for every m > n, so m = n + 1 "
           "works at every n";
  if (tgt.coefficient.form == CoefficientForm::Tangent &&
      src.coefficient.form == CoefficientForm::Power &&
      src.coefficient.power_exponent.sign() > 0 && src.exponent.uniform())
    return "vanishing scale: Q(n,m) = (n/m)^{p/e} -> 0 as m -> infinity, so a certifying m "
           "exists for every n";
  return "";
}

}  // namespace detail

inline OrientationReport refute_orientation(const Family& source, const Family& target,
                                            int n_max, int m_max, double margin) {
  if (n_max < 1 || m_max <= n_max)
    throw ArgumentError("refute_orientation: requires 1 <= n_max < m_max");
  if (!(margin > 0.0) || !(margin < 1.0))
    throw ArgumentError("refute_orientation: margin must lie in (0, 1)");
  const auto& src = detail::power_law_descriptor(source, "source");
  const Rational e_target = detail::require_uniform_target_exponent(target);
  const auto& tgt = *target.descriptor();
  const detail::KClosure closure = detail::target_k_closure(tgt);

  OrientationReport rep;
  rep.source = source.name();
  rep.target = target.name();

  bool all_witnessed = true;
  for (int n = 1; n <= n_max; ++n) {
    bool found = false;
    std::string last_reason;
    for (int m = n + 1; m <= m_max; ++m) {
      const detail::PairCheck c = detail::check_pair(src, e_target, closure, n, m, margin);
      if (c.ok) {
        rep.witnesses.push_back({n, m, c.reason});
        found = true;
        break;
      }
      last_reason = c.reason;
    }
    if (!found) {
      all_witnessed = false;
      rep.reasons.push_back("n=" + std::to_string(n) + ": no m in (" + std::to_string(n) +
                            ", " + std::to_string(m_max) + "] certifies; last: " + last_reason);
    }
  }

  const std::string rule = detail::all_n_closure_rule(src, tgt);
  if (all_witnessed && !rule.empty()) {
    rep.certified = true;
    rep.closure_rule = rule;
  } else if (all_witnessed) {
    rep.reasons.push_back(
        "all n <= " + std::to_string(n_max) +
        " have witnesses, but no symbolic rule extends them to every n; soundness requires "
        "declining the verdict");
  }
  return rep;
}

struct RefuteConfig {
  int n_max = 8;
  int m_max = 64;
  double margin = kDefaultMargin;
};

namespace detail {

// Families outside the power-law class are admitted through a refinement
// proxy: a power-law family generating the same topology. The proxy is
// validated on the spot (mutual refinement must come back Equivalent).
inline Family resolve_power_law(const Family& family, std::vector<std::string>* notes) {
  if (family.is_power_law()) return family;
  if (family.kind() == Family::Kind::Disc) {
    const Family proxy = Family::parabolas();
    const RefinementVerdict v = mutual_refinement(family, proxy, 8, 32);
    if (v.verdict != Refinement::Equivalent)
      throw UnsupportedFamily("proxy validation failed for '" + family.name() + "'");
    notes->push_back("'" + family.name() + "' shares its topology with '" + proxy.name() +
                     "' (mutual refinement verified; the criterion is applied to the proxy)");
    return proxy;
  }
  throw UnsupportedFamily("family '" + family.name() +
                          "' is neither power-law nor reducible to a power-law proxy");
}

inline void describe_orientation(const OrientationReport& rep,
                                 std::vector<std::string>* lines) {
  lines->push_back("orientation source=" + rep.source + " target=" + rep.target + ": " +
                   (rep.certified ? "certified" : "not certified"));
  for (const auto& w : rep.witnesses)
    lines->push_back("  n=" + std::to_string(w.n) + " -> m=" + std::to_string(w.m) + " (" +
                     w.reason + ")");
  if (!rep.closure_rule.empty()) lines->push_back("  all-n closure: " + rep.closure_rule);
  for (const auto& r : rep.reasons) lines->push_back("  " + r);
}

}  // namespace detail

// Runs the refutation in both orientations (homeomorphy is symmetric, so
// either one suffices). NotHomeomorphic when some orientation certifies;
// otherwise Inconclusive — which asserts nothing about homeomorphy.
inline Verdict refute(const Family& fam_a, const Family& fam_b, const RefuteConfig& config) {
  Verdict verdict;
  std::vector<std::string> notes;
  const Family a = detail::resolve_power_law(fam_a, &notes);
  const Family b = detail::resolve_power_law(fam_b, &notes);
  verdict.certificate_lines = notes;

  const std::pair<const Family*, const Family*> orientations[2] = {{&a, &b}, {&b, &a}};
  for (const auto& [src, tgt] : orientations) {
    try {
      OrientationReport rep =
          refute_orientation(*src, *tgt, config.n_max, config.m_max, config.margin);
      detail::describe_orientation(rep, &verdict.certificate_lines);
      if (rep.certified && !verdict.certifying) {
        verdict.kind = Verdict::Kind::NotHomeomorphic;
        verdict.certifying = rep;
      }
      verdict.orientations.push_back(std::move(rep));
    } catch (const UnsupportedTarget& e) {
      verdict.certificate_lines.push_back(std::string("orientation source=") + src->name() +
                                          " target=" + tgt->name() +
                                          ": skipped (" + e.what() + ")");
    }
  }

  if (verdict.kind == Verdict::Kind::NotHomeomorphic) {
    verdict.certificate_lines.push_back(
        "conclusion: the topologies are not homeomorphic; any boundary correspondence would "
        "force liminf gamma <= 1 and delta -> 0, and the certified bounds keep every A_k "
        "below 1 along such a subsequence, contradicting the comparison inequality");
  } else {
    verdict.certificate_lines.push_back(
        "conclusion: inconclusive; the engine refutes only, it never certifies homeomorphy");
  }
  return verdict;
}

// ---------------------------------------------------------------------------
// Numeric cross-check of the normal form: evaluate the defining ratio
// directly (δ(x) = p_n^{-1}(x), a valid choice since δ cancels) on a
// geometric grid and compare against the ExponentTerm prediction.

struct ProbeSample {
  double x = 0.0;
  double ratio = 0.0;
  double predicted = 0.0;
  double rel_deviation = 0.0;
};

struct ProbeTable {
  std::vector<ProbeSample> samples;
  double max_rel_deviation = 0.0;
  std::string note;
};

inline ProbeTable numeric_ratio_probe(const Family& source, const Family& target, int n, int m,
                                      int k, int grid) {
  if (grid < 2) throw ArgumentError("numeric_ratio_probe: grid must be >= 2");
  const auto& src = detail::power_law_descriptor(source, "source");
  detail::require_uniform_target_exponent(target);
  const auto& tgt = *target.descriptor();
  const ExponentTerm term = exponent_ratio_term(source, target, n, m, k);

  const auto p_inverse = [&](int idx, double y) {
    return std::pow(y / src.coeff(idx), src.expo(idx).inverse().to_double());
  };
  const auto t_eval = [&](int idx, double y) {
    return tgt.coeff(idx) * std::pow(y, tgt.expo(idx).to_double());
  };

  ProbeTable table;
  table.note = "delta(x) = p_n^{-1}(x); the choice is immaterial because delta cancels";
  double x = 0.1;
  for (int j = 0; j < grid; ++j, x *= 0.5) {
    const double delta = p_inverse(n, x);
    const double arg = p_inverse(m, x) * delta / p_inverse(n, x);
    const double ratio = t_eval(k, arg) / t_eval(1, delta);
    const double predicted = term.eval_mid(x);
    const double rel = std::fabs(ratio - predicted) /
                       std::max({std::fabs(ratio), std::fabs(predicted), 1e-300});
    table.samples.push_back({x, ratio, predicted, rel});
    table.max_rel_deviation = std::max(table.max_rel_deviation, rel);
  }
  return table;
}

}  // namespace niemytzki
