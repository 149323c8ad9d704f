#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "niemytzki/errors.hpp"
#include "niemytzki/geometry.hpp"
#include "niemytzki/util.hpp"

namespace niemytzki {

// Brute-force oracle for the two-components claim: rasterize a window
// around both neighborhoods, mark every cell that meets U(a) ∪ U(b), and
// flood-fill the rest 4-connectively. Marking is by exact cell/region
// intersection, not center sampling: the complement's two parts touch at
// the single points (a,0) and (b,0), and a center-sampled raster can leak
// through that pinch whenever the profile's inverse at half a cell height
// is smaller than a cell width (steep profiles, e.g. power(s<1) at large
// n). Intersection marking always seals the anchor columns, so complement
// cells lie wholly inside the true complement at every resolution.

struct RasterResult {
  int grid = 0;
  double x0 = 0.0, y0 = 0.0;  // lower-left corner of the window
  double dx = 0.0, dy = 0.0;  // cell widths
  std::vector<std::int32_t> labels;  // row-major from the bottom row; -1 = meets U(a) ∪ U(b)
  int component_count = 0;
  // Components that never touch the left/right/top window edges. The bottom
  // edge sits on the boundary line y = 0 — part of the space, not a crop —
  // so touching it says nothing about escaping the window.
  std::vector<std::int32_t> bounded_labels;

  std::int32_t label_at(int row, int col) const {
    return labels[static_cast<std::size_t>(row) * static_cast<std::size_t>(grid) +
                  static_cast<std::size_t>(col)];
  }
  Point center(int row, int col) const {
    return {x0 + (col + 0.5) * dx, y0 + (row + 0.5) * dy};
  }
  bool is_bounded_label(std::int32_t label) const {
    return std::find(bounded_labels.begin(), bounded_labels.end(), label) !=
           bounded_labels.end();
  }
};

namespace detail {

// Does the closed cell [x1,x2] x [y1,y2] meet U(anchor, f)? The region is
// open, so a positive-length overlap is required; zero-measure tangencies
// count as disjoint. f is monotone in |x - anchor|, so the infimum of f
// over the cell's x-range is attained at the x nearest the anchor.
inline bool cell_meets_neighborhood(double anchor, const Profile& f, double x1, double x2,
                                    double y1, double y2) {
  if (x1 <= anchor && anchor <= x2 && y1 <= 0.0) return true;  // the anchor point itself
  const double hw = f.half_width();
  const double lo = std::max(x1, anchor - hw);
  const double hi = std::min(x2, anchor + hw);
  if (lo > hi) return false;
  const double cap = f.cap();
  if (y1 >= cap) return false;
  const double nearest = std::clamp(anchor, lo, hi);
  const double f_min = f.eval(std::fabs(nearest - anchor));
  return f_min < y2 && f_min < cap;
}

}  // namespace detail

inline RasterResult raster_components(const LensRegion& lens, int grid) {
  if (grid < 100) throw ArgumentError("raster_components: grid must be >= 100");

  const Profile& f = lens.profile();
  const double hw = f.half_width();
  RasterResult r;
  r.grid = grid;
  r.x0 = lens.a() - 2.0 * hw;
  r.y0 = 0.0;
  const double x_extent = (lens.b() + 2.0 * hw) - r.x0;
  const double y_extent = 1.2 * f.cap();
  r.dx = x_extent / grid;
  r.dy = y_extent / grid;

  const std::size_t cells = static_cast<std::size_t>(grid) * static_cast<std::size_t>(grid);
  r.labels.assign(cells, 0);

  // Mark cells meeting either neighborhood. Rows are independent; split
  // them across the worker cap. Labels are decided per cell, so the
  // result does not depend on the thread count.
  const auto mark_rows = [&](int row_begin, int row_end) {
    for (int row = row_begin; row < row_end; ++row) {
      const double y1 = r.y0 + row * r.dy;
      const double y2 = y1 + r.dy;
      for (int col = 0; col < grid; ++col) {
        const double x1 = r.x0 + col * r.dx;
        const double x2 = x1 + r.dx;
        if (detail::cell_meets_neighborhood(lens.a(), f, x1, x2, y1, y2) ||
            detail::cell_meets_neighborhood(lens.b(), f, x1, x2, y1, y2))
          r.labels[static_cast<std::size_t>(row) * static_cast<std::size_t>(grid) +
                   static_cast<std::size_t>(col)] = -1;
      }
    }
  };
  const int workers = std::min(static_cast<int>(thread_cap()), grid);
  if (workers <= 1) {
    mark_rows(0, grid);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    const int rows_per = (grid + workers - 1) / workers;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back(mark_rows, std::min(w * rows_per, grid),
                        std::min((w + 1) * rows_per, grid));
    for (auto& t : pool) t.join();
  }

  // Flood fill the complement, 4-connected, scan order => deterministic
  // labels. Iterative stack; recursion depth would be the component size.
  std::int32_t next_label = 0;
  std::vector<std::size_t> stack;
  std::vector<bool> touches_frame;
  const auto at = [&](int row, int col) -> std::int32_t& {
    return r.labels[static_cast<std::size_t>(row) * static_cast<std::size_t>(grid) +
                    static_cast<std::size_t>(col)];
  };
  for (int row = 0; row < grid; ++row) {
    for (int col = 0; col < grid; ++col) {
      if (at(row, col) != 0) continue;
      ++next_label;
      touches_frame.push_back(false);
      at(row, col) = next_label;
      stack.push_back(static_cast<std::size_t>(row) * static_cast<std::size_t>(grid) +
                      static_cast<std::size_t>(col));
      while (!stack.empty()) {
        const std::size_t idx = stack.back();
        stack.pop_back();
        const int cr = static_cast<int>(idx / static_cast<std::size_t>(grid));
        const int cc = static_cast<int>(idx % static_cast<std::size_t>(grid));
        if (cc == 0 || cr == grid - 1 || cc == grid - 1)
          touches_frame.back() = true;
        const int nbr[4][2] = {{cr - 1, cc}, {cr + 1, cc}, {cr, cc - 1}, {cr, cc + 1}};
        for (const auto& nb : nbr) {
          if (nb[0] < 0 || nb[0] >= grid || nb[1] < 0 || nb[1] >= grid) continue;
          std::int32_t& cell = at(nb[0], nb[1]);
          if (cell != 0) continue;
          cell = next_label;
          stack.push_back(static_cast<std::size_t>(nb[0]) * static_cast<std::size_t>(grid) +
                          static_cast<std::size_t>(nb[1]));
        }
      }
    }
  }
  r.component_count = next_label;
  for (std::int32_t lab = 1; lab <= next_label; ++lab)
    if (!touches_frame[static_cast<std::size_t>(lab - 1)]) r.bounded_labels.push_back(lab);
  return r;
}

// Agreement between the raster's bounded component and the analytic lens
// membership at cell centers. Cells near the analytic boundary are
// excluded by a local test: a cell counts only if every center in its
// 5x5 neighborhood (clipped at the window edge) has the same analytic
// membership — that is the operational form of "farther than 2 cell
// widths from the boundary".
struct AgreementStats {
  long long considered = 0;
  long long agreeing = 0;
  double ratio() const {
    return considered == 0 ? 1.0 : static_cast<double>(agreeing) / static_cast<double>(considered);
  }
};

inline AgreementStats raster_agreement(const RasterResult& raster, const LensRegion& lens) {
  const int grid = raster.grid;
  std::vector<char> analytic(static_cast<std::size_t>(grid) * static_cast<std::size_t>(grid));
  for (int row = 0; row < grid; ++row)
    for (int col = 0; col < grid; ++col)
      analytic[static_cast<std::size_t>(row) * static_cast<std::size_t>(grid) +
               static_cast<std::size_t>(col)] =
          lens.in_bounded_component(raster.center(row, col)) ? 1 : 0;

  AgreementStats stats;
  for (int row = 0; row < grid; ++row) {
    for (int col = 0; col < grid; ++col) {
      const char mine =
          analytic[static_cast<std::size_t>(row) * static_cast<std::size_t>(grid) +
                   static_cast<std::size_t>(col)];
      bool uniform = true;
      for (int dr = -2; dr <= 2 && uniform; ++dr) {
        for (int dc = -2; dc <= 2 && uniform; ++dc) {
          const int rr = row + dr, cc = col + dc;
          if (rr < 0 || rr >= grid || cc < 0 || cc >= grid) continue;
          uniform = analytic[static_cast<std::size_t>(rr) * static_cast<std::size_t>(grid) +
                             static_cast<std::size_t>(cc)] == mine;
        }
      }
      if (!uniform) continue;
      const std::int32_t label = raster.label_at(row, col);
      const bool raster_bounded = label > 0 && raster.is_bounded_label(label);
      ++stats.considered;
      if (raster_bounded == (mine == 1)) ++stats.agreeing;
    }
  }
  return stats;
}

}  // namespace niemytzki
