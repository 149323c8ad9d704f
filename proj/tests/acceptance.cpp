// Acceptance gate: exercises the seven headline guarantees end to end and
// prints one PASS/FAIL line for each. Exits nonzero if any line fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "niemytzki/criterion.hpp"
#include "niemytzki/geometry.hpp"
#include "niemytzki/liminf.hpp"
#include "niemytzki/profile.hpp"
#include "niemytzki/raster.hpp"
#include "niemytzki/util.hpp"

using namespace niemytzki;

namespace {

int g_failures = 0;

void report(int idx, bool ok, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", idx, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

void guarded(int idx, const std::function<std::pair<bool, std::string>()>& body) {
  try {
    const auto [ok, detail] = body();
    report(idx, ok, detail);
  } catch (const std::exception& e) {
    report(idx, false, std::string("unexpected exception: ") + e.what());
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

constexpr double kPi = 3.14159265358979323846;

}  // namespace

int main() {
  // 1 -- axiom verification across the builtin catalogue ------------------
  guarded(1, [] {
    const std::vector<Family> families = {
        Family::parabolas(),        Family::power(Rational(1, 2)),
        Family::power(Rational(1)), Family::power(Rational(2)),
        Family::power(Rational(3)), Family::triangles(kPi / 6),
        Family::triangles(kPi / 4), Family::triangles(kPi / 3),
        Family::w(),                Family::discs()};
    const auto t0 = std::chrono::steady_clock::now();
    int passed = 0;
    std::string first_failure;
    for (const auto& f : families) {
      const AxiomReport rep = verify_basic(f, 32, 10000);
      if (rep.all_passed()) ++passed;
      else if (first_failure.empty()) first_failure = f.name();
    }
    const double dt = seconds_since(t0);
    char buf[240];
    std::snprintf(buf, sizeof buf,
                  "verify_basic clean for %d/%zu builtin families at n_max=32, grid=10000, "
                  "%.2fs (budget 10s)%s%s",
                  passed, families.size(), dt,
                  first_failure.empty() ? "" : "; first failure: ", first_failure.c_str());
    return std::pair<bool, std::string>(passed == static_cast<int>(families.size()) && dt < 10.0,
                                        buf);
  });

  // 2 -- the parabola/disc sandwich and the refinement equivalence --------
  guarded(2, [] {
    const int grid = 10000;
    const double eps = std::numeric_limits<double>::epsilon();
    long long violations1 = 0, violations2 = 0;
    for (int n = 1; n <= 20; ++n) {
      const Profile par = Family::parabolas().profile(n);
      const Profile disc2n = Family::discs().profile(2 * n);
      const Profile discn = Family::discs().profile(n);
      // n x^2 <= 1/(2n) - sqrt(1/(4n^2) - x^2) on [0, 1/(2n)]: strict off 0,
      // and the stable arc form keeps every grid point provably positive
      const double a1 = disc2n.half_width();
      for (int i = 0; i < grid; ++i) {
        const double x = a1 * (static_cast<double>(i) / (grid - 1));
        if (!(par.eval(x) <= disc2n.eval(x))) ++violations1;
      }
      // 1/n - sqrt(1/n^2 - x^2) <= n x^2 on [0, 1/n]: an exact-math equality
      // at the right endpoint, so rounding gets 4 ulps of relative room
      const double a2 = discn.half_width();
      for (int i = 0; i < grid; ++i) {
        const double x = a2 * (static_cast<double>(i) / (grid - 1));
        if (!(discn.eval(x) <= par.eval(x) * (1.0 + 4.0 * eps))) ++violations2;
      }
    }
    const RefinementVerdict v = mutual_refinement(Family::parabolas(), Family::discs(), 8, 32);
    bool witnesses_ok = v.verdict == Refinement::Equivalent;
    for (const auto& [n, k] : v.a_refines_b.witnesses) witnesses_ok = witnesses_ok && k <= 2 * n;
    for (const auto& [n, k] : v.b_refines_a.witnesses) witnesses_ok = witnesses_ok && k <= 2 * n;
    char buf[240];
    std::snprintf(buf, sizeof buf,
                  "sandwich inequalities at 10000 points for n <= 20: %lld + %lld violations; "
                  "mutual refinement %s with witnesses k(n) <= 2n: %s",
                  violations1, violations2, refinement_name(v.verdict),
                  witnesses_ok ? "yes" : "no");
    return std::pair<bool, std::string>(violations1 == 0 && violations2 == 0 && witnesses_ok,
                                        buf);
  });

  // 3 -- raster components of the two-neighborhood complement -------------
  guarded(3, [] {
    const auto t0 = std::chrono::steady_clock::now();
    const LensRegion lens(0.0, 0.4, Family::parabolas(), 2);
    const RasterResult raster = raster_components(lens, 800);
    const AgreementStats agree = raster_agreement(raster, lens);
    const double dt = seconds_since(t0);
    char buf[240];
    std::snprintf(buf, sizeof buf,
                  "parabolas n=2, (a,b)=(0,0.4), 800x800 raster: %d components (%zu bounded), "
                  "agreement %.5f off the boundary band, %.2fs (budget 5s)",
                  raster.component_count, raster.bounded_labels.size(), agree.ratio(), dt);
    return std::pair<bool, std::string>(raster.component_count == 2 &&
                                            raster.bounded_labels.size() == 1 &&
                                            agree.ratio() >= 0.999 && dt < 5.0,
                                        buf);
  });

  // 4 -- the verdict matrix ------------------------------------------------
  guarded(4, [] {
    const RefuteConfig cfg{8, 64, 1e-9};
    std::string bad;
    const auto expect = [&](const char* tag, const Verdict& v, bool refuted) {
      if ((v.kind == Verdict::Kind::NotHomeomorphic) != refuted) {
        if (!bad.empty()) bad += ", ";
        bad += tag;
      }
    };
    const Verdict tri_discs = refute(Family::triangles(kPi / 4), Family::discs(), cfg);
    expect("(triangles,discs)", tri_discs, true);
    int m1 = -1;
    if (tri_discs.certifying && !tri_discs.certifying->witnesses.empty() &&
        tri_discs.certifying->witnesses.front().n == 1)
      m1 = tri_discs.certifying->witnesses.front().m;
    if (m1 != 6) {
      if (!bad.empty()) bad += ", ";
      bad += "(triangles,discs) first witness m(1)=" + std::to_string(m1) + " != 6";
    }
    const Verdict w_par = refute(Family::w(), Family::parabolas(), cfg);
    expect("(w,parabolas)", w_par, true);
    if (!w_par.certifying ||
        w_par.certifying->closure_rule.find("positive x-exponent") == std::string::npos) {
      if (!bad.empty()) bad += ", ";
      bad += "(w,parabolas) closure rule";
    }
    expect("(w,triangles)", refute(Family::w(), Family::triangles(kPi / 4), cfg), true);
    expect("(parabolas,parabolas)", refute(Family::parabolas(), Family::parabolas(), cfg),
           false);
    expect("(power(1),power(3))",
           refute(Family::power(Rational(1)), Family::power(Rational(3)), cfg), false);
    expect("(triangles,triangles)",
           refute(Family::triangles(kPi / 4), Family::triangles(kPi / 4), cfg), false);
    std::string detail =
        "verdict matrix at margin 1e-9, n_max=8, m_max=64: three refuted pairs "
        "(first witness m(1)=" +
        std::to_string(m1) + "), three homeomorphic controls inconclusive";
    if (!bad.empty()) detail += "; mismatches: " + bad;
    return std::pair<bool, std::string>(bad.empty(), detail);
  });

  // 5 -- numeric agreement with the symbolic normal form -------------------
  guarded(5, [] {
    double worst = 0.0;
    const std::pair<Family, Family> pairs[2] = {
        {Family::w(), Family::parabolas()},
        {Family::parabolas(), Family::triangles(kPi / 4)}};
    for (const auto& [src, tgt] : pairs)
      for (int n = 1; n < 8; ++n)
        for (int m = n + 1; m <= 8; ++m)
          for (int k = 1; k <= 8; ++k) {
            const ProbeTable t = numeric_ratio_probe(src, tgt, n, m, k, 30);
            if (t.max_rel_deviation > worst) worst = t.max_rel_deviation;
          }
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "numeric ratio probe over both reference pairs, all n < m <= 8, k <= 8: "
                  "max relative deviation %.3e (bound 1e-9)",
                  worst);
    return std::pair<bool, std::string>(worst < 1e-9, buf);
  });

  // 6 -- randomized quotient-bound and descent-sequence suites -------------
  guarded(6, [] {
    Rng rng(20260816);
    int quotient_pass = 0;
    for (int trial = 0; trial < 200; ++trial) {
      const int knot_count = 2 + static_cast<int>(rng.uniform_int(0, 2));
      std::vector<double> kx, ky;
      double x = rng.uniform(0.15, 0.5);
      for (int i = 0; i < knot_count; ++i) {
        kx.push_back(x);
        ky.push_back(rng.uniform(0.1, 3.0));
        x += rng.uniform(0.1, 0.8);
      }
      const PositiveFunction h = PositiveFunction::piecewise_linear("h", kx, ky);
      const double s = rng.uniform(0.5, 2.0);
      const double c = 0.15 + 0.84 * rng.unit();
      const PositiveFunction phi("phi", [c, s](double t) { return c * s * t; });
      const PositiveFunction psi("psi", [s](double t) { return s * t; });
      if (quotient_bound_check(h, phi, psi, {}).holds) ++quotient_pass;
    }
    int descent_pass = 0;
    for (int trial = 0; trial < 50; ++trial) {
      const double c = rng.uniform(0.15, 0.9);
      const double s = c + rng.uniform(0.05, 1.0);
      const double x0 = rng.uniform(0.2, 0.8);
      const PositiveFunction phi("phi", [c](double t) { return c * t; });
      const PositiveFunction psi("psi", [s](double t) { return s * t; });
      const std::vector<double> seq = descent_sequence(phi, psi, x0, 8);
      bool good = seq.size() == 8;
      for (std::size_t i = 1; i < seq.size() && good; ++i)
        good = seq[i] < seq[i - 1] &&
               std::fabs(psi(seq[i]) - phi(seq[i - 1])) <= kTolInverse;
      if (good) ++descent_pass;
    }
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "seeded random suites: quotient bound holds on %d/200 instances; descent "
                  "residuals within %g on %d/50 instances",
                  quotient_pass, kTolInverse, descent_pass);
    return std::pair<bool, std::string>(quotient_pass == 200 && descent_pass == 50, buf);
  });

  // 7 -- the derivative-quotient limit -------------------------------------
  guarded(7, [] {
    const LiminfGrid grid{0.1, 0.5, 40, 5, kTolLiminfClosed};
    const PositiveFunction sq("h^2", [](double h) { return h * h; });
    const PositiveFunction id("h", [](double h) { return h; });
    const PositiveFunction half("h/2", [](double h) { return 0.5 * h; });
    const MonotoneFunction g_id("identity", [](double v) { return v; });
    const MonotoneFunction g_cube("cube", [](double v) { return v * v * v; });
    const MonotoneFunction g_atan("atan", [](double v) { return std::atan(v); });

    // nonzero derivative at u forces the limit 1; at u = 1 the second-order
    // radius h^2 would fall below one ulp of u deep in the tail, so that
    // case compares two first-order radii (the bound covers any admissible
    // pair)
    const Eq1Result ident = eq1_check(g_id, 0.0, sq, id, grid);
    const Eq1Result cube1 = eq1_check(g_cube, 1.0, half, id, grid);
    const Eq1Result at0 = eq1_check(g_atan, 0.0, sq, id, grid);
    // vanishing derivative at u = 0 with phi = h^2, psi = h collapses to 0
    const Eq1Result cube0 = eq1_check(g_cube, 0.0, sq, id, grid);

    const bool near1 = std::fabs(ident.estimate.value - 1.0) <= 0.01 &&
                       std::fabs(cube1.estimate.value - 1.0) <= 0.01 &&
                       std::fabs(at0.estimate.value - 1.0) <= 0.01;
    const bool all_hold = ident.holds && cube1.holds && at0.holds && cube0.holds;
    const bool collapses = cube0.estimate.value <= 0.01;
    char buf[240];
    std::snprintf(buf, sizeof buf,
                  "derivative-quotient estimates: identity %.6f, cube@1 %.6f, atan %.6f "
                  "(each within 0.01 of 1: %s); cube@0 %.3e <= 0.01: %s",
                  ident.estimate.value, cube1.estimate.value, at0.estimate.value,
                  near1 ? "yes" : "no", cube0.estimate.value, collapses ? "yes" : "no");
    return std::pair<bool, std::string>(near1 && all_hold && collapses, buf);
  });

  if (g_failures == 0) std::printf("acceptance: all 7 criteria passed\n");
  else std::printf("acceptance: %d criterion(s) failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
