#include "dyadic/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace dyadic {

namespace {

constexpr int kMaxLeafBits = 26;

std::size_t pow2(int bits) { return std::size_t{1} << bits; }

}  // namespace

std::size_t TreeConfig::num_cubes() const {
  std::size_t total = 0;
  for (int j = 0; j <= depth; ++j) total += pow2(j * n);
  return total;
}

std::size_t TreeConfig::num_leaves() const { return pow2(depth * n); }

void TreeConfig::validate() const {
  if (n < 1) throw std::invalid_argument("tree: dimension n must be >= 1");
  if (depth < 0) throw std::invalid_argument("tree: depth must be >= 0");
  if (depth * n > kMaxLeafBits) {
    throw std::invalid_argument("tree: 2^(depth*n) leaves exceeds 2^" + std::to_string(kMaxLeafBits));
  }
}

double DyadicCube::side() const { return std::ldexp(1.0, -level); }

double DyadicCube::volume() const {
  return std::ldexp(1.0, -level * static_cast<int>(index.size()));
}

bool DyadicCube::contains(const DyadicCube& other) const {
  if (other.level < level || other.index.size() != index.size()) return false;
  const int shift = other.level - level;
  for (std::size_t i = 0; i < index.size(); ++i) {
    if ((other.index[i] >> shift) != index[i]) return false;
  }
  return true;
}

double Box::volume() const {
  double v = std::max(0.0, t_hi - t_lo);
  for (std::size_t i = 0; i < x_lo.size(); ++i) v *= std::max(0.0, x_hi[i] - x_lo[i]);
  return v;
}

Box Box::intersect(const Box& other) const {
  Box out;
  out.t_lo = std::max(t_lo, other.t_lo);
  out.t_hi = std::min(t_hi, other.t_hi);
  out.x_lo.resize(x_lo.size());
  out.x_hi.resize(x_lo.size());
  for (std::size_t i = 0; i < x_lo.size(); ++i) {
    out.x_lo[i] = std::max(x_lo[i], other.x_lo[i]);
    out.x_hi[i] = std::min(x_hi[i], other.x_hi[i]);
  }
  return out;
}

void GeometryConfig::validate() const {
  if (!(aperture >= 0.0)) throw std::invalid_argument("geometry: aperture must be >= 0");
  if (!(c0 > 1.0)) throw std::invalid_argument("geometry: c0 must be > 1");
  if (!(c1 > 0.0)) throw std::invalid_argument("geometry: c1 must be > 0");
}

DyadicTree::DyadicTree(TreeConfig config) : config_(config) {
  config_.validate();
  const int n = config_.n;
  const int depth = config_.depth;
  offsets_.resize(static_cast<std::size_t>(depth) + 1);
  std::size_t total = 0;
  for (int j = 0; j <= depth; ++j) {
    offsets_[static_cast<std::size_t>(j)] = total;
    total += pow2(j * n);
  }
  leaf_count_ = pow2(depth * n);
  leaf_volume_ = std::ldexp(1.0, -depth * n);
  parent_.assign(total, kNoCube);
  level_.assign(total, 0);

  std::vector<std::int64_t> idx(static_cast<std::size_t>(n));
  for (int j = 0; j <= depth; ++j) {
    const std::size_t count = pow2(j * n);
    for (std::size_t lin = 0; lin < count; ++lin) {
      const CubeId id = offsets_[static_cast<std::size_t>(j)] + lin;
      level_[id] = j;
      if (j == 0) continue;
      idx = index_vector(static_cast<std::int64_t>(lin), j);
      for (auto& k : idx) k >>= 1;
      parent_[id] = offsets_[static_cast<std::size_t>(j - 1)] + static_cast<std::size_t>(linear_index(idx, j - 1));
    }
  }
}

std::shared_ptr<const DyadicTree> DyadicTree::make(TreeConfig config) {
  return std::make_shared<const DyadicTree>(config);
}

std::size_t DyadicTree::level_count(int level) const { return pow2(level * config_.n); }

double DyadicTree::side(CubeId id) const { return std::ldexp(1.0, -level_[id]); }

double DyadicTree::volume(CubeId id) const { return std::ldexp(1.0, -level_[id] * config_.n); }

std::int64_t DyadicTree::linear_index(const std::vector<std::int64_t>& index, int level) const {
  std::int64_t lin = 0;
  for (std::size_t i = 0; i < index.size(); ++i) lin = (lin << level) | index[i];
  return lin;
}

std::vector<std::int64_t> DyadicTree::index_vector(std::int64_t linear, int level) const {
  std::vector<std::int64_t> idx(static_cast<std::size_t>(config_.n));
  const std::int64_t mask = (std::int64_t{1} << level) - 1;
  for (int i = config_.n - 1; i >= 0; --i) {
    idx[static_cast<std::size_t>(i)] = linear & mask;
    linear >>= level;
  }
  return idx;
}

CubeId DyadicTree::id_of(const DyadicCube& cube) const {
  if (cube.level < 0 || cube.level > config_.depth) throw std::out_of_range("cube level outside tree");
  if (static_cast<int>(cube.index.size()) != config_.n) throw std::invalid_argument("cube index has wrong dimension");
  const std::int64_t side_count = cells_per_side(cube.level);
  for (auto k : cube.index) {
    if (k < 0 || k >= side_count) throw std::out_of_range("cube index outside tree");
  }
  return offsets_[static_cast<std::size_t>(cube.level)] + static_cast<std::size_t>(linear_index(cube.index, cube.level));
}

DyadicCube DyadicTree::cube(CubeId id) const {
  const int j = level_[id];
  return DyadicCube{j, index_vector(static_cast<std::int64_t>(id - offsets_[static_cast<std::size_t>(j)]), j)};
}

std::vector<CubeId> DyadicTree::children(CubeId id) const {
  std::vector<CubeId> out;
  const int j = level_[id];
  if (j == config_.depth) return out;
  const auto idx = cube(id).index;
  const std::size_t count = pow2(config_.n);
  out.reserve(count);
  std::vector<std::int64_t> child(idx.size());
  for (std::size_t e = 0; e < count; ++e) {
    for (int i = 0; i < config_.n; ++i) {
      const auto bit = static_cast<std::int64_t>((e >> (config_.n - 1 - i)) & 1U);
      child[static_cast<std::size_t>(i)] = 2 * idx[static_cast<std::size_t>(i)] + bit;
    }
    out.push_back(offsets_[static_cast<std::size_t>(j + 1)] + static_cast<std::size_t>(linear_index(child, j + 1)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

CubeId DyadicTree::ancestor_of_leaf(std::size_t k, int level) const {
  const int shift = config_.depth - level;
  auto idx = index_vector(static_cast<std::int64_t>(k), config_.depth);
  for (auto& v : idx) v >>= shift;
  return offsets_[static_cast<std::size_t>(level)] + static_cast<std::size_t>(linear_index(idx, level));
}

void DyadicTree::leaf_range(CubeId id, std::vector<std::int64_t>& lo, std::vector<std::int64_t>& hi) const {
  const auto c = cube(id);
  const int shift = config_.depth - c.level;
  lo.resize(c.index.size());
  hi.resize(c.index.size());
  for (std::size_t i = 0; i < c.index.size(); ++i) {
    lo[i] = c.index[i] << shift;
    hi[i] = (c.index[i] + 1) << shift;
  }
}

std::vector<std::size_t> DyadicTree::leaves_of(CubeId id) const {
  std::vector<std::int64_t> lo;
  std::vector<std::int64_t> hi;
  leaf_range(id, lo, hi);
  std::vector<std::size_t> out;
  std::vector<std::int64_t> cur = lo;
  const int n = config_.n;
  while (true) {
    out.push_back(static_cast<std::size_t>(linear_index(cur, config_.depth)));
    int d = n - 1;
    while (d >= 0) {
      auto& v = cur[static_cast<std::size_t>(d)];
      if (++v < hi[static_cast<std::size_t>(d)]) break;
      v = lo[static_cast<std::size_t>(d)];
      --d;
    }
    if (d < 0) break;
  }
  return out;
}

Box DyadicTree::whitney(CubeId id) const { return whitney_region(cube(id)); }

Box DyadicTree::carleson(CubeId id) const { return carleson_box(cube(id)); }

std::vector<double> DyadicTree::leaf_center(std::size_t k) const {
  const auto idx = index_vector(static_cast<std::int64_t>(k), config_.depth);
  const double h = std::ldexp(1.0, -config_.depth);
  std::vector<double> z(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) z[i] = (static_cast<double>(idx[i]) + 0.5) * h;
  return z;
}

std::vector<DyadicCube> children(const DyadicCube& cube, const TreeConfig& tree) {
  tree.validate();
  if (cube.level >= tree.depth) return {};
  const int n = tree.n;
  std::vector<DyadicCube> out;
  const std::size_t count = pow2(n);
  out.reserve(count);
  for (std::size_t e = 0; e < count; ++e) {
    DyadicCube child{cube.level + 1, std::vector<std::int64_t>(static_cast<std::size_t>(n))};
    for (int i = 0; i < n; ++i) {
      const auto bit = static_cast<std::int64_t>((e >> (n - 1 - i)) & 1U);
      child.index[static_cast<std::size_t>(i)] = 2 * cube.index[static_cast<std::size_t>(i)] + bit;
    }
    out.push_back(std::move(child));
  }
  return out;
}

std::vector<DyadicCube> ancestors_of_point(const std::vector<double>& z, const TreeConfig& tree) {
  tree.validate();
  if (static_cast<int>(z.size()) != tree.n) throw std::invalid_argument("point has wrong dimension");
  for (double v : z) {
    if (!(v >= 0.0 && v < 1.0)) throw std::out_of_range("point outside the base cube [0,1)^n");
  }
  std::vector<DyadicCube> out;
  out.reserve(static_cast<std::size_t>(tree.depth) + 1);
  for (int j = 0; j <= tree.depth; ++j) {
    DyadicCube c{j, std::vector<std::int64_t>(z.size())};
    for (std::size_t i = 0; i < z.size(); ++i) {
      c.index[i] = static_cast<std::int64_t>(std::floor(std::ldexp(z[i], j)));
    }
    out.push_back(std::move(c));
  }
  return out;
}

Box whitney_region(const DyadicCube& cube) {
  Box b = carleson_box(cube);
  b.t_lo = 0.5 * cube.side();
  return b;
}

Box carleson_box(const DyadicCube& cube) {
  const double l = cube.side();
  Box b;
  b.t_lo = 0.0;
  b.t_hi = l;
  b.x_lo.resize(cube.index.size());
  b.x_hi.resize(cube.index.size());
  for (std::size_t i = 0; i < cube.index.size(); ++i) {
    b.x_lo[i] = static_cast<double>(cube.index[i]) * l;
    b.x_hi[i] = static_cast<double>(cube.index[i] + 1) * l;
  }
  return b;
}

Box continuum_whitney(double t, const std::vector<double>& x, const GeometryConfig& geo) {
  if (!(t > 0.0)) throw std::invalid_argument("continuum_whitney: t must be > 0");
  Box b;
  b.t_lo = t / geo.c0;
  b.t_hi = std::min(1.0, geo.c0 * t);
  b.x_lo.resize(x.size());
  b.x_hi.resize(x.size());
  const double r = geo.c1 * t;
  for (std::size_t i = 0; i < x.size(); ++i) {
    b.x_lo[i] = std::max(0.0, x[i] - r);
    b.x_hi[i] = std::min(1.0, x[i] + r);
  }
  return b;
}

double continuum_whitney_volume(double t, int n, const GeometryConfig& geo) {
  return (geo.c0 - 1.0 / geo.c0) * t * std::pow(2.0 * geo.c1 * t, n);
}

bool GridCube::contains_leaf(const std::vector<std::int64_t>& leaf) const {
  for (std::size_t i = 0; i < offset.size(); ++i) {
    if (leaf[i] < offset[i] || leaf[i] >= offset[i] + side) return false;
  }
  return true;
}

Box GridCube::carleson(double h) const {
  Box b;
  b.t_lo = 0.0;
  b.t_hi = static_cast<double>(side) * h;
  b.x_lo.resize(offset.size());
  b.x_hi.resize(offset.size());
  for (std::size_t i = 0; i < offset.size(); ++i) {
    b.x_lo[i] = static_cast<double>(offset[i]) * h;
    b.x_hi[i] = static_cast<double>(offset[i] + side) * h;
  }
  return b;
}

double GridCube::volume(double h) const {
  return std::pow(static_cast<double>(side) * h, static_cast<double>(offset.size()));
}

std::vector<GridCube> test_cube_family(const TreeConfig& tree, int stride) {
  tree.validate();
  if (stride < 1) throw std::invalid_argument("test_cube_family: stride must be >= 1");
  const std::int64_t grid = std::int64_t{1} << tree.depth;
  const auto n = static_cast<std::size_t>(tree.n);

  auto dyadic_side = [&](std::int64_t s) { return (s & (s - 1)) == 0; };

  std::vector<GridCube> out;
  for (std::int64_t s = 1; s <= grid; ++s) {
    const bool strided_side = s % stride == 0;
    if (!strided_side && !dyadic_side(s)) continue;
    std::vector<std::int64_t> off(n, 0);
    while (true) {
      bool keep = false;
      if (strided_side) {
        keep = std::all_of(off.begin(), off.end(), [&](std::int64_t o) { return o % stride == 0; });
      }
      if (!keep && dyadic_side(s)) {
        keep = std::all_of(off.begin(), off.end(), [&](std::int64_t o) { return o % s == 0; });
      }
      if (keep) out.push_back(GridCube{off, s});
      std::size_t d = n;
      while (d > 0) {
        auto& v = off[d - 1];
        if (++v <= grid - s) break;
        v = 0;
        --d;
      }
      if (d == 0) break;
    }
  }
  return out;
}

}  // namespace dyadic
