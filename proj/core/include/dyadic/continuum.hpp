#pragma once

// Dyadic versus continuum norm comparisons and the tent-space check. The
// dyadic side of every comparison is exact; the continuum side is a finite
// lower approximation, so the recorded ratios are empirical envelopes.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dyadic/fields.hpp"
#include "dyadic/geometry.hpp"

namespace dyadic {

struct NormComparison {
  double continuum = 0.0;
  double dyadic = 0.0;
  double ratio = 0.0;  // continuum / dyadic
  bool defined = false;
  std::size_t nodes = 0;
};

// ||N_*(W_q f)||_p against ||N(avg_q(f, W_Q))||_p.
NormComparison compare_nt_norms(const GridFunction& f, double p, double q, const GeometryConfig& geo);

// ||C^1(W_q' g)||_p' against ||C(|W_R| avg_q'(g, W_R))||_p'.
NormComparison compare_carleson_norms(const GridFunction& g, double p_prime, double q_prime, const GeometryConfig& geo,
                                      std::span<const GridCube> family);

struct TentReport {
  double carleson = 0.0;  // ||C^2(W_2 g)||_p
  double area = 0.0;      // ||A^2 g||_p
  double ratio = 0.0;
  bool defined = false;
};

// Throws std::invalid_argument unless p > 2.
TentReport tent_space_check(const GridFunction& g, double p, const GeometryConfig& geo,
                            std::span<const GridCube> family, int substeps = 8);

struct EquivalenceRow {
  std::uint64_t seed = 0;
  int n = 1;
  int depth = 0;
  int m = 2;
  double p = 1.0;
  double q = 1.0;
  double p_prime = 1.0;
  double q_prime = 1.0;
  int stride = 2;
  NormComparison nt;
  NormComparison nt_refined;        // same data with m doubled
  NormComparison carleson;          // exponents p', q'
  NormComparison carleson_refined;  // m doubled
  NormComparison carleson_fine;     // stride halved (floored at 1)
};

// The Carleson side uses (p_prime, q_prime); the default suite reuses (p, q).
EquivalenceRow equivalence_row(std::uint64_t seed, const TreeConfig& tree, int m, double p, double q, double p_prime,
                               double q_prime, const GeometryConfig& geo, int stride, const DataSpec& data);

struct EquivalenceOptions {
  int n = 1;
  std::vector<int> depths{4, 6};
  int m = 2;
  std::vector<double> ps{1.0, 2.0, 3.0};
  std::vector<double> qs{1.0, 2.0, kInf};
  int seeds = 50;
  std::uint64_t first_seed = 1;
  int stride = 2;
  GeometryConfig geo;
  std::string data = "uniform";
};

std::vector<EquivalenceRow> equivalence_suite(const EquivalenceOptions& options);

struct Envelope {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 0;

  void add(double v);
  bool contains(double v, double rel_slack = 0.0) const;
};

}  // namespace dyadic
