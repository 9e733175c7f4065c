#pragma once

// Data carried by the tree: a nonnegative number per cube (DyadicField), a
// piecewise-constant function on the half-space organized per Whitney
// region (GridFunction), and a piecewise-constant function on the leaf cells
// of the base cube (BoundaryFunction).

#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "dyadic/geometry.hpp"

namespace dyadic {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

using TreePtr = std::shared_ptr<const DyadicTree>;

// Hoelder conjugate with 1/inf = 0.
double conjugate(double p);

class DyadicField {
 public:
  DyadicField() = default;
  explicit DyadicField(TreePtr tree);
  DyadicField(TreePtr tree, std::vector<double> values);

  const DyadicTree& tree() const { return *tree_; }
  const TreePtr& tree_ptr() const { return tree_; }
  std::size_t size() const { return values_.size(); }

  double operator[](CubeId id) const { return values_[id]; }
  double& operator[](CubeId id) { return values_[id]; }
  double at(const DyadicCube& cube) const { return values_[tree_->id_of(cube)]; }
  void set(const DyadicCube& cube, double v);

  std::span<const double> values() const { return values_; }
  bool is_zero() const;
  double max() const;

  DyadicField scaled(double lambda) const;

 private:
  TreePtr tree_;
  std::vector<double> values_;
};

class BoundaryFunction {
 public:
  BoundaryFunction() = default;
  explicit BoundaryFunction(TreePtr tree);
  BoundaryFunction(TreePtr tree, std::vector<double> values);

  const DyadicTree& tree() const { return *tree_; }
  const TreePtr& tree_ptr() const { return tree_; }
  std::size_t size() const { return values_.size(); }

  double operator[](std::size_t leaf) const { return values_[leaf]; }
  double& operator[](std::size_t leaf) { return values_[leaf]; }
  std::span<const double> values() const { return values_; }

  BoundaryFunction pow(double e) const;

 private:
  TreePtr tree_;
  std::vector<double> values_;
};

// Piecewise constant on an m x m^n refinement of every Whitney region W_Q,
// Q in the tree. Covers (2^-D-1, 1] x [0,1)^n; f is zero below the finest
// slab. Cells of one region are stored row-major with t slowest, then x_0, ...
class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(TreePtr tree, int m);
  GridFunction(TreePtr tree, int m, std::vector<double> values);

  const DyadicTree& tree() const { return *tree_; }
  const TreePtr& tree_ptr() const { return tree_; }
  int subdivision() const { return m_; }
  std::size_t cells_per_region() const { return cells_per_region_; }
  std::size_t size() const { return values_.size(); }

  std::span<const double> region(CubeId q) const;
  std::span<double> region(CubeId q);
  std::span<const double> values() const { return values_; }
  double cell(CubeId q, std::size_t c) const { return values_[q * cells_per_region_ + c]; }
  double& cell(CubeId q, std::size_t c) { return values_[q * cells_per_region_ + c]; }

  Box cell_box(CubeId q, std::size_t c) const;
  // Center (t, x) of a cell; the x part is written into `x`.
  double cell_center(CubeId q, std::size_t c, std::vector<double>& x) const;

  // Lower edge of the data domain in t: 2^-(D+1).
  double t_floor() const;
  Box domain() const;

  bool is_zero() const;
  GridFunction scaled(double lambda) const;
  GridFunction abs_pow(double r) const;
  // Same function on an (m*factor) refinement.
  GridFunction refined(int factor) const;

 private:
  TreePtr tree_;
  int m_ = 1;
  std::size_t cells_per_region_ = 1;
  std::vector<double> values_;
};

// Exponents (p, p~, q, q~, r) with 1/p + 1/p~ = 1/q + 1/q~ = 1/r.
struct ExponentConfig {
  double p = 2.0;
  double p_tilde = kInf;
  double q = 2.0;
  double q_tilde = kInf;
  double r = 2.0;

  // Derives p~ and q~; throws std::invalid_argument unless
  // r <= p < inf, r <= q <= inf, 1 <= r < inf.
  static ExponentConfig from(double p, double q, double r);
  void validate() const;
};

// (sum_leaves |h|^p 2^-Dn)^(1/p), max for p = inf.
double boundary_lp_norm(const BoundaryFunction& h, double p);

// (|R|^-1 int_R |f|^q)^(1/q) over R = region clipped to the data domain;
// essential sup for q = inf. Throws std::domain_error if |R| = 0.
double whitney_average(const GridFunction& f, double q, const Box& region);

enum class Normalization {
  kAverage,   // |W_Q|^(-1/q) ||f||_{L_q(W_Q)}
  kCarleson,  // |W_Q|^(1-1/q) ||f||_{L_q(W_Q)}
};

DyadicField to_sequence(const GridFunction& f, double q, Normalization norm = Normalization::kAverage);

// Random data. Spec strings:
//   zero | const:<v> | uniform | lognormal | sparse[:<density>]
//   delta:<level>:<k0>[,<k1>...]    (field: indicator of one cube;
//                                    grid: indicator of one Whitney region)
struct DataSpec {
  enum class Kind { kZero, kConst, kUniform, kLognormal, kSparse, kDelta };
  Kind kind = Kind::kUniform;
  double value = 1.0;
  double density = 0.3;
  DyadicCube cube;

  static DataSpec parse(const std::string& text);
};

DyadicField random_field(std::uint64_t seed, const TreePtr& tree, const DataSpec& spec);
GridFunction random_grid(std::uint64_t seed, const TreePtr& tree, int m, const DataSpec& spec);

}  // namespace dyadic
