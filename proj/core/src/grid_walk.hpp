#pragma once

// Visits the grid cells that meet a box with positive volume, passing the
// exact overlap volume. Cells are rectangles, so every integral of a
// piecewise-constant function over a box is a finite sum of these.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "dyadic/fields.hpp"

namespace dyadic::detail {

inline Box clip_to_domain(const GridFunction& f, const Box& box) { return box.intersect(f.domain()); }

template <class Fn>
void for_each_overlap(const GridFunction& f, const Box& box, Fn&& fn) {
  const DyadicTree& tree = f.tree();
  const int n = tree.dim();
  const int m = f.subdivision();
  const auto un = static_cast<std::size_t>(n);
  const Box b = clip_to_domain(f, box);
  if (b.empty()) return;

  std::vector<std::int64_t> lo(un);
  std::vector<std::int64_t> hi(un);
  std::vector<std::int64_t> cur(un);
  std::vector<double> x_overlap(un);
  std::vector<std::int64_t> cube_idx(un);

  for (int j = 0; j <= tree.depth(); ++j) {
    const double l = std::ldexp(1.0, -j);
    const double slab_lo = 0.5 * l;
    if (b.t_hi <= slab_lo || b.t_lo >= l) continue;
    const double dt = slab_lo / m;
    const double dx = l / m;
    const std::int64_t per_side = (std::int64_t{1} << j) * m;

    // t-cells of this slab meeting (t_lo, t_hi]
    auto it_lo = static_cast<std::int64_t>(std::floor((std::max(b.t_lo, slab_lo) - slab_lo) / dt));
    auto it_hi = static_cast<std::int64_t>(std::ceil((std::min(b.t_hi, l) - slab_lo) / dt));
    it_lo = std::clamp<std::int64_t>(it_lo, 0, m);
    it_hi = std::clamp<std::int64_t>(it_hi, 0, m);

    bool empty = false;
    for (std::size_t i = 0; i < un; ++i) {
      lo[i] = std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor(b.x_lo[i] / dx)), 0, per_side);
      hi[i] = std::clamp<std::int64_t>(static_cast<std::int64_t>(std::ceil(b.x_hi[i] / dx)), 0, per_side);
      if (lo[i] >= hi[i]) empty = true;
    }
    if (empty || it_lo >= it_hi) continue;

    for (std::int64_t it = it_lo; it < it_hi; ++it) {
      const double c_lo = slab_lo + static_cast<double>(it) * dt;
      const double c_hi = (it + 1 == m) ? l : slab_lo + static_cast<double>(it + 1) * dt;
      const double ot = std::min(b.t_hi, c_hi) - std::max(b.t_lo, c_lo);
      if (ot <= 0.0) continue;
      cur = lo;
      while (true) {
        double vol = ot;
        std::size_t local = static_cast<std::size_t>(it);
        for (std::size_t i = 0; i < un; ++i) {
          const double xl = static_cast<double>(cur[i]) * dx;
          const double xh = static_cast<double>(cur[i] + 1) * dx;
          vol *= std::max(0.0, std::min(b.x_hi[i], xh) - std::max(b.x_lo[i], xl));
          cube_idx[i] = cur[i] / m;
          local = local * static_cast<std::size_t>(m) + static_cast<std::size_t>(cur[i] % m);
        }
        if (vol > 0.0) {
          const CubeId q = tree.level_offset(j) + static_cast<std::size_t>(tree.linear_index(cube_idx, j));
          fn(q, local, vol);
        }
        std::size_t d = un;
        while (d > 0) {
          if (++cur[d - 1] < hi[d - 1]) break;
          cur[d - 1] = lo[d - 1];
          --d;
        }
        if (d == 0) break;
      }
    }
  }
}

}  // namespace dyadic::detail
