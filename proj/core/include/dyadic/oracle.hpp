#pragma once

// Brute-force dual norms on small trees:
//
//   dual_norm_wrt_ntball(b, p)  = sup { sum a_Q b_Q : a >= 0, ||N a||_p <= 1 }
//   dual_norm_wrt_cball(a, p')  = sup { sum a_Q b_Q : b >= 0, ||C b||_p' <= 1 }
//
// Both are linear maximizations over convex balls. The search maximizes the
// scale-invariant ratio <x, c> / ||F x|| on the simplex by multi-start
// projected supergradient ascent, warm-started from the duality-module
// extremizers, and then closes the gap with a cutting-plane LP whose value
// is an upper bound. The reported value is always attained by a feasible
// point, so it can only confirm or improve the constructions.

#include <cstdint>

#include "dyadic/fields.hpp"

namespace dyadic {

enum class Ball {
  kNtMax,     // {||N a||_p <= 1}, paired against a given b
  kCarleson,  // {||C b||_p' <= 1}, paired against a given a
};

struct OracleOptions {
  int starts = 64;
  int max_iterations = 10000;  // per ascent start, and for cutting-plane rounds
  double rel_stop = 1e-10;     // ascent stops once the best value stalls at this level
  double tolerance = 1e-6;     // certified relative gap
  std::size_t max_cubes = 31;
  std::uint64_t seed = 0x5eedULL;
};

struct OracleResult {
  double value = 0.0;        // best feasible ratio found (a lower bound)
  double upper_bound = 0.0;  // cutting-plane bound
  bool certified = false;    // upper_bound <= value (1 + tolerance)
  DyadicField argmax;        // maximizer, scaled to norm 1
  int ascent_iterations = 0;
  int cutting_rounds = 0;
};

// Throws std::length_error when the tree exceeds options.max_cubes.
OracleResult dual_norm_wrt_ntball(const DyadicField& b, double p, const OracleOptions& options = {});
OracleResult dual_norm_wrt_cball(const DyadicField& a, double p_prime, const OracleOptions& options = {});

struct ExhaustiveOptions {
  int levels = 7;          // coarse grid {0, 1/(levels-1), ..., 1} per cube
  int zoom_rounds = 24;    // local refinements around the best grid point
  int zoom_radius = 2;     // local grid is {-radius..radius} steps per cube
  std::size_t max_cubes = 7;
};

// Second-layer check: grid search over the raw values with local zoom,
// evaluating N and C straight from their definitions.
double exhaustive_dual_norm(const DyadicField& given, double exponent, Ball ball, const ExhaustiveOptions& options = {});

struct ExtremizerComparison {
  double extremizer_value = 0.0;  // pairing per unit norm achieved by the construction
  double oracle_value = 0.0;
  double ratio = 0.0;             // extremizer_value / oracle_value
  double extremizer_normalized = 0.0;  // pairing / (||N a||_p ||C b||_p') of the construction
  double oracle_normalized = 0.0;      // oracle_value / (norm of the given field)
  bool defined = false;           // false when either side is zero
};

// kNtMax: `field` is b, `exponent` is p, construction is extremal_f_for_carleson(b, p').
// kCarleson: `field` is a, `exponent` is p', construction is extremal_g_for_ntmax
// (or the stopping-forest variant when p' = inf).
ExtremizerComparison oracle_vs_extremizer(const DyadicField& field, double exponent, Ball ball,
                                          const OracleOptions& options = {});

}  // namespace dyadic
