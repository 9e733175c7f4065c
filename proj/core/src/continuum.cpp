#include "dyadic/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dyadic/functionals.hpp"

namespace dyadic {

namespace {

NormComparison make_comparison(double continuum, double dyadic, std::size_t nodes) {
  NormComparison out{continuum, dyadic, 0.0, false, nodes};
  out.defined = dyadic > 0.0 && continuum > 0.0;
  if (out.defined) out.ratio = continuum / dyadic;
  return out;
}

}  // namespace

NormComparison compare_nt_norms(const GridFunction& f, double p, double q, const GeometryConfig& geo) {
  ExponentConfig::from(p, q, 1.0).validate();
  const ContinuumResult cont = nt_max_continuum(f, q, geo);
  const double dyadic = boundary_lp_norm(nt_max_dyadic(to_sequence(f, q, Normalization::kAverage)), p);
  return make_comparison(boundary_lp_norm(cont.values, p), dyadic, cont.nodes);
}

NormComparison compare_carleson_norms(const GridFunction& g, double p_prime, double q_prime, const GeometryConfig& geo,
                                      std::span<const GridCube> family) {
  if (!(p_prime >= 1.0) || !(q_prime >= 1.0)) throw std::invalid_argument("compare_carleson_norms: exponents must be >= 1");
  const ContinuumResult cont = carleson_continuum(g, 1.0, q_prime, geo, family);
  const double dyadic =
      boundary_lp_norm(carleson_dyadic(to_sequence(g, q_prime, Normalization::kCarleson)), p_prime);
  return make_comparison(boundary_lp_norm(cont.values, p_prime), dyadic, cont.nodes);
}

TentReport tent_space_check(const GridFunction& g, double p, const GeometryConfig& geo,
                            std::span<const GridCube> family, int substeps) {
  if (!(p > 2.0)) throw std::invalid_argument("tent_space_check: requires p > 2");
  TentReport out;
  out.carleson = boundary_lp_norm(carleson_continuum(g, 2.0, 2.0, geo, family).values, p);
  out.area = boundary_lp_norm(area_integral(g, substeps), p);
  out.defined = out.area > 0.0 && out.carleson > 0.0;
  if (out.defined) out.ratio = out.carleson / out.area;
  return out;
}

EquivalenceRow equivalence_row(std::uint64_t seed, const TreeConfig& config, int m, double p, double q, double p_prime,
                               double q_prime, const GeometryConfig& geo, int stride, const DataSpec& data) {
  const auto tree = DyadicTree::make(config);
  const GridFunction f = random_grid(seed, tree, m, data);
  const GridFunction fine = f.refined(2);
  const auto family = test_cube_family(config, stride);
  const auto fine_family = test_cube_family(config, std::max(1, stride / 2));

  EquivalenceRow row;
  row.seed = seed;
  row.n = config.n;
  row.depth = config.depth;
  row.m = m;
  row.p = p;
  row.q = q;
  row.p_prime = p_prime;
  row.q_prime = q_prime;
  row.stride = stride;
  row.nt = compare_nt_norms(f, p, q, geo);
  row.nt_refined = compare_nt_norms(fine, p, q, geo);
  row.carleson = compare_carleson_norms(f, p_prime, q_prime, geo, family);
  row.carleson_refined = compare_carleson_norms(fine, p_prime, q_prime, geo, family);
  row.carleson_fine = compare_carleson_norms(f, p_prime, q_prime, geo, fine_family);
  return row;
}

std::vector<EquivalenceRow> equivalence_suite(const EquivalenceOptions& options) {
  const DataSpec data = DataSpec::parse(options.data);
  std::vector<EquivalenceRow> rows;
  for (int depth : options.depths) {
    const TreeConfig config{options.n, depth};
    for (double p : options.ps) {
      for (double q : options.qs) {
        for (int s = 0; s < options.seeds; ++s) {
          rows.push_back(equivalence_row(options.first_seed + static_cast<std::uint64_t>(s), config, options.m, p, q, p,
                                         q, options.geo, options.stride, data));
        }
      }
    }
  }
  return rows;
}

void Envelope::add(double v) {
  if (count == 0) {
    lo = hi = v;
  } else {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  ++count;
}

bool Envelope::contains(double v, double rel_slack) const {
  return v >= lo * (1.0 - rel_slack) && v <= hi * (1.0 + rel_slack);
}

}  // namespace dyadic
