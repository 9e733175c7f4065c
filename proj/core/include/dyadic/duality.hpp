#pragma once

// Scalar pairing sum_Q a_Q b_Q between tree sequences, the upper bound
// sum a_Q b_Q <= 2 ||N a||_p ||C b||_p', and the constructive near-extremizers
// for the two lower bounds. The L_q(W_Q) instance is reached through
// to_sequence and pairing_grid.

#include <cstdint>
#include <string>
#include <vector>

#include "dyadic/fields.hpp"
#include "dyadic/geometry.hpp"

namespace dyadic {

// Constant of the upper bound in the scalar model.
inline constexpr double kPairingConstant = 2.0;

struct PairingReport {
  double pairing = 0.0;
  double p = 1.0;
  double p_prime = kInf;
  double nt_norm = 0.0;        // ||N a||_p
  double carleson_norm = 0.0;  // ||C b||_p'
  double ratio = 0.0;          // pairing / (nt_norm * carleson_norm), 0 when degenerate
  bool degenerate = false;     // a product of norms was zero
  std::string construction;

  // pairing <= 2 ||N a||_p ||C b||_p' up to `rel_tol` relative slack.
  bool upper_bound_holds(double rel_tol = 1e-12) const;
};

// sum_Q a_Q b_Q; throws std::invalid_argument when the trees differ.
double pairing(const DyadicField& a, const DyadicField& b);

// (int |f g|^r)^(1/r) over the data domain, exact cell sum.
double pairing_grid(const GridFunction& f, const GridFunction& g, double r);

// Norms and ratio for a given pair; requires 1 <= p < inf.
PairingReport check_pairing_upper(const DyadicField& a, const DyadicField& b, double p);

struct Extremizer {
  DyadicField field;
  PairingReport report;
  CubeId chosen = kNoCube;  // p' = inf branch: the cube attaining ||C b||_inf
};

// Given b, builds a with pairing comparable to ||N a||_p ||C b||_p'.
//  p' = inf: a = |Q|^-1 on the subtree of the cube Q attaining ||C b||_inf.
//  1 < p' < inf: a_R = (|R|^-1 int_R C b)^(p'-1).
// Throws std::invalid_argument for p' <= 1.
Extremizer extremal_f_for_carleson(const DyadicField& b, double p_prime);

// Given a and 1 < p < inf, builds b with b_Q = |Q| sum_{k : Q in D^k} 2^(k(p-1)),
// where Q in D^k iff a_Q > 2^k >= a_Q' for every strict ancestor Q'.
Extremizer extremal_g_for_ntmax(const DyadicField& a, double p);

struct StoppingForest {
  double c = 0.125;
  // generations[j]: the disjoint cubes of D^j, D^0 = {root}
  std::vector<std::vector<CubeId>> generations;
  // for every selected cube: its next-generation cubes and |E(Q)|
  std::vector<std::vector<CubeId>> next;  // indexed by CubeId, empty if unselected
  std::vector<double> remainder;          // |E(Q)|, 0 for unselected cubes
  std::vector<char> selected;
  std::vector<char> dense;                // D^f_1: |E(Q)| > c |Q|

  std::vector<CubeId> members() const;  // all selected cubes, generation order
};

// Recursively selects maximal R subset Q with a_R > 2 a_Q. Requires 0 < c < 1.
StoppingForest stopping_forest(const DyadicField& a, double c = 0.125);

// p = 1: b_Q = |Q| on D^f_1 of the stopping forest, 0 elsewhere (all zero when a = 0).
// Guarantees ||C b||_inf <= 1/c and pairing >= (1 - 4c)/2 ||N a||_1.
Extremizer extremal_g_for_ntmax_p1(const DyadicField& a, double c = 0.125);

struct MultiplierReport {
  ExponentConfig exponents;
  double estimate = 0.0;           // sup over candidates of ||f g||_r / ||N_*(W_q f)||_p
  std::size_t candidates = 0;
  std::string best_candidate;
  double carleson_norm = 0.0;      // ||C^r(W_q~ g)||_p~
  double ratio_carleson = 0.0;     // estimate / carleson_norm (0 if degenerate)
  bool has_modified = false;       // p = q = r = 2
  double modified_carleson = 0.0;  // modified Carleson norm of g
  double ratio_modified = 0.0;
};

// Lower estimate of the multiplier norm of g from N_{p,q} into L_r. The
// candidate set is: f = 1, the extremizer-derived grid built from g, and
// `budget` seeded random grids (candidate i uses seed + i, so a larger
// budget is a superset).
MultiplierReport multiplier_norm_estimate(const GridFunction& g, const ExponentConfig& exponents, std::size_t budget,
                                          std::uint64_t seed, const GeometryConfig& geo, int stride = 1);

}  // namespace dyadic
