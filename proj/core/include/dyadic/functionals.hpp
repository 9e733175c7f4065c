#pragma once

// Maximal and Carleson functionals. The dyadic ones are exact maps from
// tree data to leaf-wise constant boundary functions. The continuum ones
// take finite suprema over evaluation nodes or test cubes, so they are
// lower approximations of the true suprema; each reports its node count.

#include <cstddef>
#include <span>
#include <vector>

#include "dyadic/fields.hpp"
#include "dyadic/geometry.hpp"

namespace dyadic {

struct ContinuumResult {
  BoundaryFunction values;
  std::size_t nodes = 0;  // evaluation nodes (or test cubes) in the supremum
};

// sup of a_Q over the ancestor chain of every leaf.
BoundaryFunction nt_max_dyadic(const DyadicField& a);

// sup over ancestors Q of |Q|^-1 sum_{R subset Q} b_R.
BoundaryFunction carleson_dyadic(const DyadicField& b);

// Subtree sums sum_{R subset Q} b_R for every Q, accumulated bottom-up in
// fixed id order.
DyadicField subtree_sums(const DyadicField& b);

// Average of h over every cube of the tree.
DyadicField cube_averages(const BoundaryFunction& h);

// sup over ancestors Q of ((1/|Q|) sum_{R subset Q} |W_R| avg_{q~}(g, W_R)^r)^(1/r).
// Requires 1 <= r < inf and r <= q~ <= inf.
BoundaryFunction carleson_r_dyadic(const GridFunction& g, double r, double q_tilde);

// Dyadic Hardy-Littlewood maximal function.
BoundaryFunction maximal_dyadic(const BoundaryFunction& h);

// W_q f sampled at every cell center, stored in the layout of f.
GridFunction whitney_sampled(const GridFunction& f, double q, const GeometryConfig& geo);

// N_*(W_q f) at leaf centers z. Nodes are the cell centers (t, x) with
// |x - z|_inf <= a t, plus the axis points (t, z) for every cell-center
// height t, so that a = 0 yields the vertical maximal function.
ContinuumResult nt_max_continuum(const GridFunction& f, double q, const GeometryConfig& geo);

// C^r(W_{q'} g) at leaf centers: sup over family cubes Q containing the leaf
// of ((1/|Q|) int_{Q-hat} (W_{q'} g)^r)^(1/r), with W_{q'} g taken constant
// on each cell at its center value.
ContinuumResult carleson_continuum(const GridFunction& g, double r, double q_prime, const GeometryConfig& geo,
                                   std::span<const GridCube> family);

// Same, for an integrand that is already sampled (no Whitney averaging).
ContinuumResult carleson_of_sampled(const GridFunction& h, double r, std::span<const GridCube> family);

// sup over family cubes of the average of h.
BoundaryFunction maximal_continuum(const BoundaryFunction& h, std::span<const GridCube> family);

// A^2(g)(x) = (int_{|y-x|_inf < t} |g|^2 dy dt / t^n)^(1/2) at leaf centers;
// x-overlaps are exact per cell, t uses a `substeps`-point midpoint rule.
BoundaryFunction area_integral(const GridFunction& g, int substeps = 8);

// sup over dyadic Q of ((1/|Q|) int_{Q-hat} W_inf g^2)^(1/2).
double modified_carleson_norm(const GridFunction& g, const GeometryConfig& geo);

// Witness for the big-mean property: given W covered by W_1..W_N with
// |W_j| <= C |W|, some j has mean_{W_j} u >= mean_W u / (C N).
struct BigMeanWitness {
  std::size_t index = 0;  // j attaining the largest mean
  double mean_w = 0.0;
  double mean_best = 0.0;
  double c = 0.0;         // max_j |W_j| / |W|, volumes clipped to the data domain
  double bound = 0.0;     // mean_w / (c N)
  bool holds = false;
};

BigMeanWitness big_mean_witness(const GridFunction& u, const Box& w, std::span<const Box> cover);

}  // namespace dyadic
