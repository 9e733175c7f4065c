#pragma once

// Dyadic geometry over the truncated tree on the base cube [0,1)^n.
//
// Cubes are addressed two ways: as a (level, index-vector) pair for the
// public surface, and as a flat CubeId inside DyadicTree. Flat ids are
// ordered level by level (coarse to fine), and inside a level row-major in
// the index vector with dimension 0 slowest. Every kernel in the library
// relies on "parent id < child id".

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

namespace dyadic {

using CubeId = std::size_t;
inline constexpr CubeId kNoCube = static_cast<CubeId>(-1);

struct TreeConfig {
  int n = 1;      // spatial dimension
  int depth = 0;  // finest level D

  std::size_t num_cubes() const;
  std::size_t num_leaves() const;
  void validate() const;

  friend bool operator==(const TreeConfig&, const TreeConfig&) = default;
};

struct DyadicCube {
  int level = 0;
  std::vector<std::int64_t> index;

  double side() const;    // 2^-level
  double volume() const;  // 2^-(level*n)
  bool contains(const DyadicCube& other) const;

  friend bool operator==(const DyadicCube&, const DyadicCube&) = default;
};

// Axis-aligned box in the half-space: t in (t_lo, t_hi], x_i in [x_lo_i, x_hi_i).
struct Box {
  double t_lo = 0.0;
  double t_hi = 0.0;
  std::vector<double> x_lo;
  std::vector<double> x_hi;

  int dim() const { return static_cast<int>(x_lo.size()); }
  double volume() const;
  bool empty() const { return volume() <= 0.0; }
  Box intersect(const Box& other) const;
};

// Whitney-region parameters: aperture a of the cones, c0 > 1 and c1 > 0 of W(t,x).
struct GeometryConfig {
  double aperture = 1.0;
  double c0 = 2.0;
  double c1 = 0.5;

  void validate() const;
};

// Precomputed topology of the truncated dyadic tree. Immutable; share it by
// shared_ptr between fields.
class DyadicTree {
 public:
  explicit DyadicTree(TreeConfig config);

  static std::shared_ptr<const DyadicTree> make(TreeConfig config);

  const TreeConfig& config() const { return config_; }
  int dim() const { return config_.n; }
  int depth() const { return config_.depth; }
  std::size_t size() const { return parent_.size(); }
  std::size_t leaf_count() const { return leaf_count_; }

  std::size_t level_offset(int level) const { return offsets_[static_cast<std::size_t>(level)]; }
  std::size_t level_count(int level) const;
  std::int64_t cells_per_side(int level) const { return std::int64_t{1} << level; }

  int level(CubeId id) const { return level_[id]; }
  CubeId parent(CubeId id) const { return parent_[id]; }
  CubeId root() const { return 0; }
  bool is_leaf(CubeId id) const { return level_[id] == config_.depth; }

  double side(CubeId id) const;
  double volume(CubeId id) const;
  double leaf_volume() const { return leaf_volume_; }

  CubeId id_of(const DyadicCube& cube) const;
  DyadicCube cube(CubeId id) const;
  std::vector<CubeId> children(CubeId id) const;

  // Leaves are numbered row-major at level D; leaf(k) is their flat id.
  CubeId leaf(std::size_t k) const { return offsets_.back() + k; }
  std::size_t leaf_index(CubeId leaf_id) const { return leaf_id - offsets_.back(); }

  // Flat id of the level-j ancestor of leaf k.
  CubeId ancestor_of_leaf(std::size_t k, int level) const;

  // Range [first, last) of leaf numbers inside a cube, per dimension.
  void leaf_range(CubeId id, std::vector<std::int64_t>& lo, std::vector<std::int64_t>& hi) const;

  // Leaves inside a cube, as leaf numbers.
  std::vector<std::size_t> leaves_of(CubeId id) const;

  // Whitney region and Carleson box of a flat cube.
  Box whitney(CubeId id) const;
  Box carleson(CubeId id) const;

  // Center of leaf k.
  std::vector<double> leaf_center(std::size_t k) const;

  std::int64_t linear_index(const std::vector<std::int64_t>& index, int level) const;
  std::vector<std::int64_t> index_vector(std::int64_t linear, int level) const;

 private:
  TreeConfig config_;
  std::vector<std::size_t> offsets_;
  std::vector<CubeId> parent_;
  std::vector<int> level_;
  std::size_t leaf_count_ = 0;
  double leaf_volume_ = 1.0;
};

// Children of a cube, empty for leaves.
std::vector<DyadicCube> children(const DyadicCube& cube, const TreeConfig& tree);

// The D+1 cubes containing z, coarse to fine. Throws std::out_of_range
// when z is outside [0,1)^n.
std::vector<DyadicCube> ancestors_of_point(const std::vector<double>& z, const TreeConfig& tree);

// W_Q = (l/2, l] x Q.
Box whitney_region(const DyadicCube& cube);
// Q-hat = (0, l] x Q.
Box carleson_box(const DyadicCube& cube);

// W(t,x) with a sup-norm ball in x, clipped to (0,1] x [0,1)^n.
// Throws std::invalid_argument for t <= 0.
Box continuum_whitney(double t, const std::vector<double>& x, const GeometryConfig& geo);

// Unclipped volume of W(t,x): (c0 - 1/c0) t (2 c1 t)^n.
double continuum_whitney_volume(double t, int n, const GeometryConfig& geo);

// Axis-parallel cube aligned to the leaf grid, in units of h = 2^-D.
struct GridCube {
  std::vector<std::int64_t> offset;
  std::int64_t side = 1;

  bool contains_leaf(const std::vector<std::int64_t>& leaf) const;
  Box carleson(double h) const;
  double volume(double h) const;
};

// Test cubes for non-dyadic suprema: every grid-aligned cube whose side
// and offsets are multiples of `stride` (in leaf units), together with all
// dyadic cubes of the tree. stride = 1 gives every grid-aligned cube.
std::vector<GridCube> test_cube_family(const TreeConfig& tree, int stride);

}  // namespace dyadic
