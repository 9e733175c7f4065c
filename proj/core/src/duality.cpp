#include "dyadic/duality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dyadic/functionals.hpp"

namespace dyadic {

namespace {

void require_same_tree(const DyadicTree& x, const DyadicTree& y) {
  if (&x != &y && !(x.config() == y.config())) throw std::invalid_argument("fields live on different trees");
}

// Largest integer k with 2^k < v (v > 0).
int largest_power_below(double v) {
  int e = 0;
  const double mant = std::frexp(v, &e);  // v = mant * 2^e, mant in [0.5, 1)
  return mant == 0.5 ? e - 2 : e - 1;
}

// Smallest integer k with 2^k >= v (v > 0).
int smallest_power_above(double v) {
  int e = 0;
  const double mant = std::frexp(v, &e);
  return mant == 0.5 ? e - 1 : e;
}

// sum_{k = lo}^{hi} 2^(k s) for s > 0; lo = INT_MIN means unbounded below.
double geometric_power_sum(int lo, int hi, double s) {
  if (lo > hi) return 0.0;
  const double top = std::exp2(static_cast<double>(hi) * s);
  const double ratio = std::exp2(-s);
  if (lo == std::numeric_limits<int>::min()) return top / (1.0 - ratio);
  const double terms = static_cast<double>(hi) - static_cast<double>(lo) + 1.0;
  return top * (1.0 - std::pow(ratio, terms)) / (1.0 - ratio);
}

}  // namespace

bool PairingReport::upper_bound_holds(double rel_tol) const {
  const double bound = kPairingConstant * nt_norm * carleson_norm;
  return pairing <= bound + rel_tol * std::max(bound, pairing);
}

double pairing(const DyadicField& a, const DyadicField& b) {
  require_same_tree(a.tree(), b.tree());
  double s = 0.0;
  for (CubeId id = 0; id < a.size(); ++id) s += a[id] * b[id];
  return s;
}

double pairing_grid(const GridFunction& f, const GridFunction& g, double r) {
  require_same_tree(f.tree(), g.tree());
  if (f.subdivision() != g.subdivision()) throw std::invalid_argument("pairing_grid: grids have different subdivision");
  if (!(r >= 1.0) || std::isinf(r)) throw std::invalid_argument("pairing_grid: need 1 <= r < inf");
  const DyadicTree& tree = f.tree();
  const auto cells = static_cast<double>(f.cells_per_region());
  double total = 0.0;
  for (CubeId id = 0; id < tree.size(); ++id) {
    const double cell_vol = 0.5 * tree.side(id) * tree.volume(id) / cells;
    const auto fr = f.region(id);
    const auto gr = g.region(id);
    double s = 0.0;
    for (std::size_t c = 0; c < fr.size(); ++c) s += std::pow(std::abs(fr[c] * gr[c]), r);
    total += s * cell_vol;
  }
  return std::pow(total, 1.0 / r);
}

PairingReport check_pairing_upper(const DyadicField& a, const DyadicField& b, double p) {
  if (!(p >= 1.0) || std::isinf(p)) throw std::invalid_argument("check_pairing_upper: need 1 <= p < inf");
  PairingReport rep;
  rep.p = p;
  rep.p_prime = conjugate(p);
  rep.pairing = pairing(a, b);
  rep.nt_norm = boundary_lp_norm(nt_max_dyadic(a), p);
  rep.carleson_norm = boundary_lp_norm(carleson_dyadic(b), rep.p_prime);
  const double denom = rep.nt_norm * rep.carleson_norm;
  rep.degenerate = !(denom > 0.0);
  rep.ratio = rep.degenerate ? 0.0 : rep.pairing / denom;
  rep.construction = "given";
  return rep;
}

Extremizer extremal_f_for_carleson(const DyadicField& b, double p_prime) {
  if (!(p_prime > 1.0)) throw std::invalid_argument("extremal_f_for_carleson: need 1 < p' <= inf");
  const DyadicTree& tree = b.tree();
  Extremizer out;
  std::vector<double> a(tree.size(), 0.0);

  if (std::isinf(p_prime)) {
    const DyadicField sums = subtree_sums(b);
    CubeId best = tree.root();
    double best_avg = -1.0;
    for (CubeId id = 0; id < tree.size(); ++id) {
      const double avg = sums[id] / tree.volume(id);
      if (avg > best_avg) {
        best_avg = avg;
        best = id;
      }
    }
    const double value = 1.0 / tree.volume(best);
    std::vector<CubeId> stack{best};
    while (!stack.empty()) {
      const CubeId q = stack.back();
      stack.pop_back();
      a[q] = value;
      for (CubeId c : tree.children(q)) stack.push_back(c);
    }
    out.chosen = best;
  } else {
    const DyadicField mean_c = cube_averages(carleson_dyadic(b));
    for (CubeId id = 0; id < tree.size(); ++id) a[id] = std::pow(mean_c[id], p_prime - 1.0);
  }

  out.field = DyadicField(b.tree_ptr(), std::move(a));
  out.report = check_pairing_upper(out.field, b, conjugate(p_prime));
  out.report.construction = std::isinf(p_prime) ? "carleson-sup-cube" : "carleson-power";
  return out;
}

Extremizer extremal_g_for_ntmax(const DyadicField& a, double p) {
  if (!(p > 1.0) || std::isinf(p)) throw std::invalid_argument("extremal_g_for_ntmax: need 1 < p < inf");
  const DyadicTree& tree = a.tree();
  std::vector<double> above(tree.size(), 0.0);  // max of a over strict ancestors
  for (CubeId id = 1; id < tree.size(); ++id) {
    const CubeId par = tree.parent(id);
    above[id] = std::max(above[par], a[par]);
  }
  std::vector<double> b(tree.size(), 0.0);
  for (CubeId id = 0; id < tree.size(); ++id) {
    const double v = a[id];
    if (!(v > above[id])) continue;
    const int hi = largest_power_below(v);
    const int lo = above[id] > 0.0 ? smallest_power_above(above[id]) : std::numeric_limits<int>::min();
    b[id] = tree.volume(id) * geometric_power_sum(lo, hi, p - 1.0);
  }
  Extremizer out;
  out.field = DyadicField(a.tree_ptr(), std::move(b));
  out.report = check_pairing_upper(a, out.field, p);
  out.report.construction = "level-selection";
  return out;
}

std::vector<CubeId> StoppingForest::members() const {
  std::vector<CubeId> out;
  for (const auto& gen : generations) out.insert(out.end(), gen.begin(), gen.end());
  return out;
}

StoppingForest stopping_forest(const DyadicField& a, double c) {
  if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("stopping_forest: need 0 < c < 1");
  const DyadicTree& tree = a.tree();
  StoppingForest f;
  f.c = c;
  f.next.assign(tree.size(), {});
  f.remainder.assign(tree.size(), 0.0);
  f.selected.assign(tree.size(), 0);
  f.dense.assign(tree.size(), 0);
  f.generations.push_back({tree.root()});
  f.selected[tree.root()] = 1;

  for (std::size_t j = 0; j < f.generations.size(); ++j) {
    std::vector<CubeId> nextgen;
    for (CubeId q : f.generations[j]) {
      const double threshold = 2.0 * a[q];
      std::vector<CubeId> stack = tree.children(q);
      std::reverse(stack.begin(), stack.end());
      double covered = 0.0;
      while (!stack.empty()) {
        const CubeId r = stack.back();
        stack.pop_back();
        if (a[r] > threshold) {
          f.next[q].push_back(r);
          f.selected[r] = 1;
          covered += tree.volume(r);
          continue;
        }
        auto kids = tree.children(r);
        stack.insert(stack.end(), kids.rbegin(), kids.rend());
      }
      std::sort(f.next[q].begin(), f.next[q].end());
      f.remainder[q] = tree.volume(q) - covered;
      f.dense[q] = f.remainder[q] > c * tree.volume(q) ? 1 : 0;
      nextgen.insert(nextgen.end(), f.next[q].begin(), f.next[q].end());
    }
    if (nextgen.empty()) break;
    std::sort(nextgen.begin(), nextgen.end());
    f.generations.push_back(std::move(nextgen));
  }
  return f;
}

Extremizer extremal_g_for_ntmax_p1(const DyadicField& a, double c) {
  const DyadicTree& tree = a.tree();
  std::vector<double> b(tree.size(), 0.0);
  if (!a.is_zero()) {
    const StoppingForest forest = stopping_forest(a, c);
    for (CubeId q : forest.members()) {
      if (forest.dense[q]) b[q] = tree.volume(q);
    }
  }
  Extremizer out;
  out.field = DyadicField(a.tree_ptr(), std::move(b));
  out.report = check_pairing_upper(a, out.field, 1.0);
  out.report.construction = "stopping-forest";
  return out;
}

}  // namespace dyadic
