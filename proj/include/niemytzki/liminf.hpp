#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "niemytzki/errors.hpp"
#include "niemytzki/profile.hpp"

namespace niemytzki {

inline constexpr double kTolLiminf = 0.05;        // default estimate tolerance
inline constexpr double kTolLiminfClosed = 0.01;  // closed-form differentiable cases

// ---------------------------------------------------------------------------
// Function wrappers. Positive functions live on (0, x_max]; monotone
// functions on a closed interval. Piecewise-linear variants interpolate
// linearly between knots and, below the first knot, along the segment
// from the origin — so they stay positive and vanish at 0.

class PositiveFunction {
 public:
  PositiveFunction(std::string name, std::function<double(double)> eval)
      : name_(std::move(name)), eval_(std::move(eval)) {}

  static PositiveFunction piecewise_linear(std::string name, std::vector<double> knots_x,
                                           std::vector<double> knots_y) {
    if (knots_x.size() != knots_y.size() || knots_x.size() < 2)
      throw ArgumentError("piecewise_linear: needs >= 2 knots");
    for (std::size_t i = 0; i < knots_x.size(); ++i) {
      if (!(knots_x[i] > 0.0)) throw ArgumentError("piecewise_linear: knots must be positive");
      if (i > 0 && !(knots_x[i] > knots_x[i - 1]))
        throw ArgumentError("piecewise_linear: knots must be strictly increasing");
      if (!(knots_y[i] > 0.0)) throw ArgumentError("piecewise_linear: values must be positive");
    }
    auto xs = std::make_shared<std::vector<double>>(std::move(knots_x));
    auto ys = std::make_shared<std::vector<double>>(std::move(knots_y));
    return PositiveFunction(std::move(name), [xs, ys](double x) {
      const auto& kx = *xs;
      const auto& ky = *ys;
      if (!(x > 0.0) || x > kx.back() * (1.0 + 1e-12))
        throw EvaluationError("piecewise-linear function evaluated off its domain");
      // locate the segment; below the first knot use the origin segment
      std::size_t hi = std::lower_bound(kx.begin(), kx.end(), x) - kx.begin();
      double x0 = 0.0, y0 = 0.0;
      if (hi >= kx.size()) hi = kx.size() - 1;
      if (hi > 0) {
        x0 = kx[hi - 1];
        y0 = ky[hi - 1];
      }
      const double t = (x - x0) / (kx[hi] - x0);
      return y0 + t * (ky[hi] - y0);
    });
  }

  double operator()(double x) const {
    const double v = eval_(x);
    if (!std::isfinite(v)) throw EvaluationError("function '" + name_ + "' not finite at x=" +
                                                 std::to_string(x));
    return v;
  }
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  std::function<double(double)> eval_;
};

class MonotoneFunction {
 public:
  MonotoneFunction(std::string name, std::function<double(double)> eval)
      : name_(std::move(name)), eval_(std::move(eval)) {}

  static MonotoneFunction piecewise_linear(std::string name, std::vector<double> knots_x,
                                           std::vector<double> knots_y) {
    if (knots_x.size() != knots_y.size() || knots_x.size() < 2)
      throw ArgumentError("piecewise_linear: needs >= 2 knots");
    for (std::size_t i = 1; i < knots_x.size(); ++i) {
      if (!(knots_x[i] > knots_x[i - 1]))
        throw ArgumentError("piecewise_linear: knots must be strictly increasing");
      if (knots_y[i] < knots_y[i - 1])
        throw ArgumentError("piecewise_linear: values must be nondecreasing");
    }
    auto xs = std::make_shared<std::vector<double>>(std::move(knots_x));
    auto ys = std::make_shared<std::vector<double>>(std::move(knots_y));
    return MonotoneFunction(std::move(name), [xs, ys](double x) {
      const auto& kx = *xs;
      const auto& ky = *ys;
      if (x < kx.front() || x > kx.back())
        throw DomainError("monotone function evaluated off its knot range");
      std::size_t hi = std::lower_bound(kx.begin(), kx.end(), x) - kx.begin();
      if (hi == 0) return ky.front();
      if (hi >= kx.size()) hi = kx.size() - 1;
      const double t = (x - kx[hi - 1]) / (kx[hi] - kx[hi - 1]);
      return ky[hi - 1] + t * (ky[hi] - ky[hi - 1]);
    });
  }

  double operator()(double x) const { return eval_(x); }
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  std::function<double(double)> eval_;
};

// ---------------------------------------------------------------------------
// Liminf estimation on a geometric grid x_j = x0 * rho^j, j = 0..depth-1.
// The grid's tail is split into `windows` disjoint blocks of depth/windows
// points each; the estimate is the minimum over the final block (the
// points nearest 0), and convergence compares the last two block minima.
// A grid proxy cannot certify a liminf over a continuum; tolerances are
// stated per use, never claimed exact.

struct LiminfGrid {
  double x0 = 0.1;
  double rho = 0.5;
  int depth = 40;
  int windows = 5;
  double tol = kTolLiminf;
};

struct LiminfEstimate {
  LiminfGrid grid;
  std::vector<double> window_minima;
  double value = 0.0;
  bool converged = false;
  std::vector<std::pair<double, double>> samples;  // (x_j, F(x_j)), j ascending
  std::vector<int> window_ids;                     // -1 for head points outside all windows

  int window_of(int j) const { return window_ids[static_cast<std::size_t>(j)]; }
};

inline LiminfEstimate liminf_estimate(const PositiveFunction& f, const LiminfGrid& grid) {
  if (!(grid.x0 > 0.0) || !(grid.rho > 0.0) || !(grid.rho < 1.0))
    throw ArgumentError("liminf grid: needs x0 > 0 and rho in (0, 1)");
  if (grid.windows < 2 || grid.depth < 2 * grid.windows)
    throw ArgumentError("liminf grid: needs windows >= 2 and depth >= 2 * windows");

  LiminfEstimate est;
  est.grid = grid;
  const int size = grid.depth / grid.windows;
  const int first_windowed = grid.depth - size * grid.windows;

  double x = grid.x0;
  for (int j = 0; j < grid.depth; ++j, x *= grid.rho) {
    double v = 0.0;
    try {
      v = f(x);
    } catch (const Error&) {
      throw;
    } catch (const std::exception& e) {
      throw EvaluationError("liminf sample failed at x=" + std::to_string(x) + ": " + e.what());
    }
    est.samples.emplace_back(x, v);
    est.window_ids.push_back(j < first_windowed ? -1 : (j - first_windowed) / size);
  }

  est.window_minima.assign(static_cast<std::size_t>(grid.windows), 0.0);
  std::vector<bool> seen(static_cast<std::size_t>(grid.windows), false);
  for (int j = first_windowed; j < grid.depth; ++j) {
    const int w = est.window_ids[static_cast<std::size_t>(j)];
    const double v = est.samples[static_cast<std::size_t>(j)].second;
    auto& slot = est.window_minima[static_cast<std::size_t>(w)];
    if (!seen[static_cast<std::size_t>(w)] || v < slot) slot = v;
    seen[static_cast<std::size_t>(w)] = true;
  }

  est.value = est.window_minima.back();
  est.converged =
      std::fabs(est.window_minima.back() - est.window_minima[est.window_minima.size() - 2]) <
      grid.tol;
  return est;
}

// ---------------------------------------------------------------------------
// The quotient bound: for positive φ <= ψ with ψ -> 0 and positive h with
// h -> 0 at 0, the lower limit of h(φ(x))/h(ψ(x)) as x -> 0+ is at most
// 1. `holds` reports the estimator's agreement with that bound.

struct QuotientBoundResult {
  LiminfEstimate estimate;
  bool holds = false;
};

inline QuotientBoundResult quotient_bound_check(const PositiveFunction& h,
                                                const PositiveFunction& phi,
                                                const PositiveFunction& psi,
                                                const LiminfGrid& grid) {
  // precondition scan: φ <= ψ at every grid point, ψ and h(ψ) shrinking
  // into the tail
  double x = grid.x0;
  double psi_first = 0.0, psi_last = 0.0;
  for (int j = 0; j < grid.depth; ++j, x *= grid.rho) {
    const double a = phi(x), b = psi(x);
    if (a > b)
      throw PreconditionError("quotient_bound_check: phi > psi at x=" + std::to_string(x));
    if (j == 0) psi_first = b;
    psi_last = b;
  }
  if (!(psi_last < 0.01 * psi_first) && !(psi_last < 1e-9))
    throw PreconditionError("quotient_bound_check: psi does not approach 0 on the grid tail");
  if (!(h(psi_last) < h(psi_first)) && !(h(psi_last) < 1e-9))
    throw PreconditionError("quotient_bound_check: h does not approach 0 along psi's tail");

  PositiveFunction quotient("h(phi)/h(psi)", [&h, &phi, &psi](double t) {
    return h(phi(t)) / h(psi(t));
  });
  QuotientBoundResult result{liminf_estimate(quotient, grid), false};
  result.holds = result.estimate.value <= 1.0 + grid.tol;
  return result;
}

// ---------------------------------------------------------------------------
// The descent sequence from the quotient bound's proof: x_{k+1} in
// (0, x_k) with ψ(x_{k+1}) = φ(x_k), found by bisection (ψ is continuous
// and ψ -> 0, so a root is bracketed once ψ drops below the target).

inline std::vector<double> descent_sequence(const PositiveFunction& phi,
                                            const PositiveFunction& psi, double x0, int count) {
  if (!(x0 > 0.0)) throw ArgumentError("descent_sequence: x0 must be positive");
  if (count < 1) throw ArgumentError("descent_sequence: count must be >= 1");
  if (!(phi(x0) < psi(x0)))
    throw PreconditionError("descent_sequence: requires phi < psi at x0");

  std::vector<double> seq{x0};
  while (static_cast<int>(seq.size()) < count && seq.back() >= 1e-14) {
    const double xk = seq.back();
    const double target = phi(xk);
    if (!(target < psi(xk)))
      throw PreconditionError("descent_sequence: phi < psi violated at x=" +
                              std::to_string(xk));
    // bracket: walk left until psi falls below the target
    double lo = 0.5 * xk;
    int guard = 0;
    while (psi(lo) > target && ++guard < kBisectionCap) lo *= 0.5;
    if (psi(lo) > target)
      throw NoRootError("descent_sequence: no bracket for psi(x) = phi(x_k) in (0, x_k)");
    double hi = xk;
    double next = 0.5 * (lo + hi);
    for (int it = 0; it < kBisectionCap && hi - lo > 0.0; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      next = mid;
      if (std::fabs(psi(mid) - target) <= 0.1 * kTolInverse) break;
      (psi(mid) < target ? lo : hi) = mid;
    }
    if (!(next < xk))
      throw NoRootError("descent_sequence: bisection failed to descend below x_k");
    seq.push_back(next);
  }
  return seq;
}

// ---------------------------------------------------------------------------
// I(u, r, w) = (g(u + r(w)) - g(u - r(w))) / (2 r(w)): the symmetric
// difference quotient of g at u with radius r(w).

inline double derivative_quotient(const MonotoneFunction& g, double u,
                                  const PositiveFunction& r, double w) {
  const double radius = r(w);
  if (!(radius > 0.0))
    throw DomainError("derivative_quotient: radius r(w) must be positive");
  return (g(u + radius) - g(u - radius)) / (2.0 * radius);
}

// ---------------------------------------------------------------------------
// The double-quotient check: liminf_{h->0} I(u,φ,h)/I(u,ψ,h) <= 1 for
// nondecreasing g and admissible φ <= ψ. Samples with a vanishing
// denominator (g locally constant on the ψ-ball) are skipped and counted;
// an all-degenerate grid is an error, a mostly-degenerate tail is flagged.

struct Eq1Result {
  LiminfEstimate estimate;
  bool holds = false;
  int skipped = 0;
  bool low_confidence = false;
};

inline Eq1Result eq1_check(const MonotoneFunction& g, double u, const PositiveFunction& phi,
                           const PositiveFunction& psi, const LiminfGrid& grid) {
  if (grid.windows < 2 || grid.depth < 2 * grid.windows)
    throw ArgumentError("liminf grid: needs windows >= 2 and depth >= 2 * windows");

  struct Sample {
    double x;
    double q;
    bool valid;
  };
  std::vector<Sample> rows;
  int degenerate_tail = 0, tail_total = 0;
  const int size = grid.depth / grid.windows;
  const int first_windowed = grid.depth - size * grid.windows;

  double x = grid.x0;
  for (int j = 0; j < grid.depth; ++j, x *= grid.rho) {
    const double a = phi(x), b = psi(x);
    if (a > b) throw PreconditionError("eq1_check: phi > psi at x=" + std::to_string(x));
    const double num = derivative_quotient(g, u, phi, x);
    const double den = derivative_quotient(g, u, psi, x);
    if (num < 0.0 || den < 0.0)
      throw PreconditionError("eq1_check: g is not nondecreasing near u");
    const bool valid = den != 0.0;
    if (j >= first_windowed) {
      ++tail_total;
      if (!valid) ++degenerate_tail;
    }
    rows.push_back({x, valid ? num / den : 0.0, valid});
  }

  Eq1Result result;
  result.skipped = static_cast<int>(
      std::count_if(rows.begin(), rows.end(), [](const Sample& s) { return !s.valid; }));
  if (result.skipped == static_cast<int>(rows.size()))
    throw AllDegenerateError("eq1_check: the denominator quotient vanishes at every sample");
  result.low_confidence = 2 * degenerate_tail > tail_total;

  // window minima over the valid samples, placed by original grid index
  LiminfEstimate est;
  est.grid = grid;
  std::vector<bool> seen(static_cast<std::size_t>(grid.windows), false);
  est.window_minima.assign(static_cast<std::size_t>(grid.windows), 0.0);
  for (int j = 0; j < grid.depth; ++j) {
    const auto& s = rows[static_cast<std::size_t>(j)];
    const int w = j < first_windowed ? -1 : (j - first_windowed) / size;
    est.samples.emplace_back(s.x, s.q);
    est.window_ids.push_back(s.valid ? w : -1);
    if (w < 0 || !s.valid) continue;
    auto& slot = est.window_minima[static_cast<std::size_t>(w)];
    if (!seen[static_cast<std::size_t>(w)] || s.q < slot) slot = s.q;
    seen[static_cast<std::size_t>(w)] = true;
  }
  // the estimate comes from the last window with any valid sample
  int last = -1, prev = -1;
  for (int w = grid.windows - 1; w >= 0; --w) {
    if (!seen[static_cast<std::size_t>(w)]) continue;
    if (last < 0) last = w;
    else {
      prev = w;
      break;
    }
  }
  if (last < 0)
    throw AllDegenerateError("eq1_check: every windowed sample is degenerate");
  est.value = est.window_minima[static_cast<std::size_t>(last)];
  est.converged = prev >= 0 && std::fabs(est.window_minima[static_cast<std::size_t>(last)] -
                                         est.window_minima[static_cast<std::size_t>(prev)]) <
                                  grid.tol;
  result.estimate = std::move(est);
  result.holds = result.estimate.value <= 1.0 + grid.tol;
  return result;
}

}  // namespace niemytzki
