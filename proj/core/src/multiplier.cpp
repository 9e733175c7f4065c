#include <algorithm>
#include <cmath>
#include <string>

#include "dyadic/duality.hpp"
#include "dyadic/functionals.hpp"

namespace dyadic {

namespace {

// Per-region Hoelder partner of G = |g|^r: a grid F whose L_{q/r} Whitney
// averages equal a_Q and whose pairing with G saturates Hoelder.
GridFunction holder_partner(const GridFunction& big_g, const DyadicField& a, double s, double s_dual) {
  GridFunction out(big_g.tree_ptr(), big_g.subdivision());
  const auto cells = static_cast<double>(big_g.cells_per_region());
  for (CubeId id = 0; id < big_g.tree().size(); ++id) {
    const auto gr = big_g.region(id);
    auto fr = out.region(id);
    const double aq = a[id];
    const double gmax = *std::max_element(gr.begin(), gr.end());
    if (std::isinf(s) || gmax == 0.0) {
      std::fill(fr.begin(), fr.end(), aq);
      continue;
    }
    if (std::isinf(s_dual)) {
      const double hits = static_cast<double>(std::count(gr.begin(), gr.end(), gmax));
      for (std::size_t c = 0; c < gr.size(); ++c) fr[c] = gr[c] == gmax ? aq * cells / hits : 0.0;
      continue;
    }
    double acc = 0.0;
    for (double v : gr) acc += std::pow(v, s_dual);
    const double norm = std::pow(acc / cells, 1.0 / s_dual);
    for (std::size_t c = 0; c < gr.size(); ++c) fr[c] = aq * std::pow(gr[c] / norm, s_dual - 1.0);
  }
  return out;
}

}  // namespace

MultiplierReport multiplier_norm_estimate(const GridFunction& g, const ExponentConfig& exponents, std::size_t budget,
                                          std::uint64_t seed, const GeometryConfig& geo, int stride) {
  exponents.validate();
  geo.validate();
  const double p = exponents.p;
  const double q = exponents.q;
  const double r = exponents.r;

  MultiplierReport rep;
  rep.exponents = exponents;
  const auto family = test_cube_family(g.tree().config(), stride);

  auto try_candidate = [&](const GridFunction& f, const std::string& label) {
    ++rep.candidates;
    const double denom = boundary_lp_norm(nt_max_continuum(f, q, geo).values, p);
    if (!(denom > 0.0)) return;
    const double value = pairing_grid(f, g, r) / denom;
    if (value > rep.estimate) {
      rep.estimate = value;
      rep.best_candidate = label;
    }
  };

  try_candidate(GridFunction(g.tree_ptr(), g.subdivision(), std::vector<double>(g.size(), 1.0)), "constant");

  if (!g.is_zero()) {
    const GridFunction big_g = g.abs_pow(r);
    const double s = std::isinf(q) ? kInf : q / r;
    const double s_dual = std::isinf(exponents.q_tilde) ? kInf : exponents.q_tilde / r;
    const double p_dual = std::isinf(exponents.p_tilde) ? kInf : exponents.p_tilde / r;
    const DyadicField b = to_sequence(big_g, s_dual, Normalization::kCarleson);
    const Extremizer ext = extremal_f_for_carleson(b, p_dual);
    try_candidate(holder_partner(big_g, ext.field, s, s_dual).abs_pow(1.0 / r), "extremizer");
  }

  static const char* kSpecs[] = {"uniform", "lognormal", "sparse"};
  for (std::size_t i = 0; i < budget; ++i) {
    const auto spec = DataSpec::parse(kSpecs[i % 3]);
    try_candidate(random_grid(seed + i, g.tree_ptr(), g.subdivision(), spec), "random:" + std::to_string(seed + i));
  }

  rep.carleson_norm =
      boundary_lp_norm(carleson_continuum(g, r, exponents.q_tilde, geo, family).values, exponents.p_tilde);
  rep.ratio_carleson = rep.carleson_norm > 0.0 ? rep.estimate / rep.carleson_norm : 0.0;
  if (p == 2.0 && q == 2.0 && r == 2.0) {
    rep.has_modified = true;
    rep.modified_carleson = modified_carleson_norm(g, geo);
    rep.ratio_modified = rep.modified_carleson > 0.0 ? rep.estimate / rep.modified_carleson : 0.0;
  }
  return rep;
}

}  // namespace dyadic
