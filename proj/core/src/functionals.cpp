#include "dyadic/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "grid_walk.hpp"

namespace dyadic {

namespace {

// Running maximum of per-cube values down every ancestor chain.
BoundaryFunction chain_max(const DyadicTree& tree, const TreePtr& ptr, const std::vector<double>& per_cube) {
  std::vector<double> run(per_cube);
  for (CubeId id = 1; id < tree.size(); ++id) run[id] = std::max(run[id], run[tree.parent(id)]);
  std::vector<double> leaves(tree.leaf_count());
  for (std::size_t k = 0; k < leaves.size(); ++k) leaves[k] = run[tree.leaf(k)];
  return BoundaryFunction(ptr, std::move(leaves));
}

std::vector<std::int64_t> leaf_coords(const DyadicTree& tree, std::size_t k) {
  return tree.index_vector(static_cast<std::int64_t>(k), tree.depth());
}

}  // namespace

BoundaryFunction nt_max_dyadic(const DyadicField& a) {
  return chain_max(a.tree(), a.tree_ptr(), std::vector<double>(a.values().begin(), a.values().end()));
}

DyadicField subtree_sums(const DyadicField& b) {
  const DyadicTree& tree = b.tree();
  std::vector<double> s(b.values().begin(), b.values().end());
  for (CubeId id = tree.size(); id-- > 1;) s[tree.parent(id)] += s[id];
  return DyadicField(b.tree_ptr(), std::move(s));
}

BoundaryFunction carleson_dyadic(const DyadicField& b) {
  const DyadicTree& tree = b.tree();
  const DyadicField sums = subtree_sums(b);
  std::vector<double> avg(tree.size());
  for (CubeId id = 0; id < tree.size(); ++id) avg[id] = sums[id] / tree.volume(id);
  return chain_max(tree, b.tree_ptr(), avg);
}

DyadicField cube_averages(const BoundaryFunction& h) {
  const DyadicTree& tree = h.tree();
  std::vector<double> s(tree.size(), 0.0);
  for (std::size_t k = 0; k < tree.leaf_count(); ++k) s[tree.leaf(k)] = h[k];
  for (CubeId id = tree.size(); id-- > 1;) s[tree.parent(id)] += s[id];
  for (CubeId id = 0; id < tree.size(); ++id) {
    const double leaves = std::ldexp(1.0, (tree.depth() - tree.level(id)) * tree.dim());
    s[id] /= leaves;
  }
  // averages of nonnegative data only; signed h would fail the field invariant
  for (auto& v : s) v = std::max(v, 0.0);
  return DyadicField(h.tree_ptr(), std::move(s));
}

BoundaryFunction carleson_r_dyadic(const GridFunction& g, double r, double q_tilde) {
  if (!(r >= 1.0) || std::isinf(r)) throw std::invalid_argument("carleson_r_dyadic: need 1 <= r < inf");
  if (r > q_tilde) throw std::invalid_argument("carleson_r_dyadic: need r <= q~");
  const DyadicTree& tree = g.tree();
  const DyadicField avg = to_sequence(g, q_tilde);
  std::vector<double> w(tree.size());
  for (CubeId id = 0; id < tree.size(); ++id) {
    const double wr = 0.5 * tree.side(id) * tree.volume(id);
    w[id] = wr * std::pow(avg[id], r);
  }
  BoundaryFunction c = carleson_dyadic(DyadicField(g.tree_ptr(), std::move(w)));
  return r == 1.0 ? c : c.pow(1.0 / r);
}

BoundaryFunction maximal_dyadic(const BoundaryFunction& h) {
  const DyadicField avg = cube_averages(h);
  return chain_max(h.tree(), h.tree_ptr(), std::vector<double>(avg.values().begin(), avg.values().end()));
}

GridFunction whitney_sampled(const GridFunction& f, double q, const GeometryConfig& geo) {
  geo.validate();
  GridFunction out(f.tree_ptr(), f.subdivision());
  std::vector<double> x;
  for (CubeId id = 0; id < f.tree().size(); ++id) {
    for (std::size_t c = 0; c < f.cells_per_region(); ++c) {
      const double t = f.cell_center(id, c, x);
      out.cell(id, c) = whitney_average(f, q, continuum_whitney(t, x, geo));
    }
  }
  return out;
}

ContinuumResult nt_max_continuum(const GridFunction& f, double q, const GeometryConfig& geo) {
  geo.validate();
  const DyadicTree& tree = f.tree();
  const GridFunction sampled = whitney_sampled(f, q, geo);

  // node list: (t, x, value)
  struct Node {
    double t;
    std::vector<double> x;
    double value;
  };
  std::vector<Node> nodes;
  nodes.reserve(f.size());
  std::vector<double> heights;
  std::vector<double> x;
  for (CubeId id = 0; id < tree.size(); ++id) {
    for (std::size_t c = 0; c < f.cells_per_region(); ++c) {
      const double t = f.cell_center(id, c, x);
      nodes.push_back(Node{t, x, sampled.cell(id, c)});
      heights.push_back(t);
    }
  }
  std::sort(heights.begin(), heights.end());
  heights.erase(std::unique(heights.begin(), heights.end()), heights.end());

  std::vector<double> out(tree.leaf_count(), 0.0);
  for (std::size_t k = 0; k < tree.leaf_count(); ++k) {
    const auto z = tree.leaf_center(k);
    double best = 0.0;
    for (const Node& nd : nodes) {
      const double reach = geo.aperture * nd.t;
      bool inside = true;
      for (std::size_t i = 0; i < z.size(); ++i) {
        if (std::abs(nd.x[i] - z[i]) > reach) {
          inside = false;
          break;
        }
      }
      if (inside) best = std::max(best, nd.value);
    }
    for (double t : heights) best = std::max(best, whitney_average(f, q, continuum_whitney(t, z, geo)));
    out[k] = best;
  }
  return ContinuumResult{BoundaryFunction(f.tree_ptr(), std::move(out)), nodes.size() + heights.size()};
}

ContinuumResult carleson_of_sampled(const GridFunction& h, double r, std::span<const GridCube> family) {
  if (!(r >= 1.0) || std::isinf(r)) throw std::invalid_argument("carleson: need 1 <= r < inf");
  const DyadicTree& tree = h.tree();
  const double step = std::ldexp(1.0, -tree.depth());
  std::vector<double> out(tree.leaf_count(), 0.0);
  std::vector<std::vector<std::int64_t>> leaves(tree.leaf_count());
  for (std::size_t k = 0; k < leaves.size(); ++k) leaves[k] = leaf_coords(tree, k);

  for (const GridCube& cube : family) {
    double s = 0.0;
    detail::for_each_overlap(h, cube.carleson(step), [&](CubeId id, std::size_t c, double vol) {
      s += std::pow(std::abs(h.cell(id, c)), r) * vol;
    });
    double value = s / cube.volume(step);
    if (r != 1.0) value = std::pow(value, 1.0 / r);
    for (std::size_t k = 0; k < leaves.size(); ++k) {
      if (cube.contains_leaf(leaves[k])) out[k] = std::max(out[k], value);
    }
  }
  return ContinuumResult{BoundaryFunction(h.tree_ptr(), std::move(out)), family.size()};
}

ContinuumResult carleson_continuum(const GridFunction& g, double r, double q_prime, const GeometryConfig& geo,
                                   std::span<const GridCube> family) {
  return carleson_of_sampled(whitney_sampled(g, q_prime, geo), r, family);
}

BoundaryFunction maximal_continuum(const BoundaryFunction& h, std::span<const GridCube> family) {
  const DyadicTree& tree = h.tree();
  const int n = tree.dim();
  std::vector<double> out(tree.leaf_count(), 0.0);
  std::vector<std::vector<std::int64_t>> leaves(tree.leaf_count());
  for (std::size_t k = 0; k < leaves.size(); ++k) leaves[k] = leaf_coords(tree, k);
  for (const GridCube& cube : family) {
    double s = 0.0;
    for (std::size_t k = 0; k < leaves.size(); ++k) {
      if (cube.contains_leaf(leaves[k])) s += h[k];
    }
    const double avg = s / std::pow(static_cast<double>(cube.side), n);
    for (std::size_t k = 0; k < leaves.size(); ++k) {
      if (cube.contains_leaf(leaves[k])) out[k] = std::max(out[k], avg);
    }
  }
  return BoundaryFunction(h.tree_ptr(), std::move(out));
}

BoundaryFunction area_integral(const GridFunction& g, int substeps) {
  if (substeps < 1) throw std::invalid_argument("area_integral: substeps must be >= 1");
  const DyadicTree& tree = g.tree();
  const int n = tree.dim();
  std::vector<double> out(tree.leaf_count(), 0.0);
  for (std::size_t k = 0; k < tree.leaf_count(); ++k) {
    const auto x = tree.leaf_center(k);
    double total = 0.0;
    for (CubeId id = 0; id < tree.size(); ++id) {
      for (std::size_t c = 0; c < g.cells_per_region(); ++c) {
        const double v = g.cell(id, c);
        if (v == 0.0) continue;
        const Box cell = g.cell_box(id, c);
        const double h = (cell.t_hi - cell.t_lo) / substeps;
        double s = 0.0;
        for (int i = 0; i < substeps; ++i) {
          const double t = cell.t_lo + (i + 0.5) * h;
          double overlap = 1.0;
          for (std::size_t d = 0; d < x.size() && overlap > 0.0; ++d) {
            overlap *= std::max(0.0, std::min(cell.x_hi[d], x[d] + t) - std::max(cell.x_lo[d], x[d] - t));
          }
          s += overlap / std::pow(t, n);
        }
        total += v * v * s * h;
      }
    }
    out[k] = std::sqrt(total);
  }
  return BoundaryFunction(g.tree_ptr(), std::move(out));
}

double modified_carleson_norm(const GridFunction& g, const GeometryConfig& geo) {
  const DyadicTree& tree = g.tree();
  std::vector<GridCube> dyadic_family;
  dyadic_family.reserve(tree.size());
  for (CubeId id = 0; id < tree.size(); ++id) {
    const auto cube = tree.cube(id);
    const std::int64_t side = std::int64_t{1} << (tree.depth() - cube.level);
    GridCube gc;
    gc.side = side;
    for (auto k : cube.index) gc.offset.push_back(k * side);
    dyadic_family.push_back(std::move(gc));
  }
  const auto c = carleson_continuum(g, 2.0, kInf, geo, dyadic_family);
  return boundary_lp_norm(c.values, kInf);
}

BigMeanWitness big_mean_witness(const GridFunction& u, const Box& w, std::span<const Box> cover) {
  if (cover.empty()) throw std::invalid_argument("big_mean_witness: empty cover");
  BigMeanWitness out;
  const double vol_w = detail::clip_to_domain(u, w).volume();
  out.mean_w = whitney_average(u, 1.0, w);
  double cmax = 0.0;
  double best = -1.0;
  for (std::size_t j = 0; j < cover.size(); ++j) {
    const double vol = detail::clip_to_domain(u, cover[j]).volume();
    cmax = std::max(cmax, vol / vol_w);
    const double mean = whitney_average(u, 1.0, cover[j]);
    if (mean > best) {
      best = mean;
      out.index = j;
    }
  }
  out.mean_best = best;
  out.c = cmax;
  out.bound = out.mean_w / (cmax * static_cast<double>(cover.size()));
  out.holds = out.mean_best >= out.bound;
  return out;
}

}  // namespace dyadic
