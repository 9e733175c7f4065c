#include "dyadic/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "dyadic/duality.hpp"
#include "lp.hpp"

namespace dyadic {

namespace {

double lp_of(const std::vector<double>& leaf, double e, double w) {
  if (std::isinf(e)) return leaf.empty() ? 0.0 : *std::max_element(leaf.begin(), leaf.end());
  double s = 0.0;
  for (double v : leaf) s += std::pow(v, e);
  return std::pow(s * w, 1.0 / e);
}

// ||N x||_p or ||C x||_p' together with a subgradient, for x >= 0.
class BallNorm {
 public:
  BallNorm(const DyadicTree& tree, Ball ball, double exponent)
      : tree_(tree), ball_(ball), e_(exponent), w_(tree.leaf_volume()) {
    vol_.resize(tree.size());
    for (CubeId id = 0; id < tree.size(); ++id) vol_[id] = tree.volume(id);
  }

  double value(const std::vector<double>& x) const {
    leaf_values(x);
    return lp_of(leaf_, e_, w_);
  }

  double subgradient(const std::vector<double>& x, std::vector<double>& g) const {
    leaf_values(x);
    const double phi = lp_of(leaf_, e_, w_);
    g.assign(x.size(), 0.0);
    if (!(phi > 0.0)) return phi;

    weight_.assign(leaf_.size(), 0.0);
    if (std::isinf(e_)) {
      const auto it = std::max_element(leaf_.begin(), leaf_.end());
      weight_[static_cast<std::size_t>(it - leaf_.begin())] = 1.0;
    } else {
      for (std::size_t k = 0; k < leaf_.size(); ++k) weight_[k] = w_ * std::pow(leaf_[k] / phi, e_ - 1.0);
    }

    if (ball_ == Ball::kNtMax) {
      for (std::size_t k = 0; k < leaf_.size(); ++k) g[arg_[tree_.leaf(k)]] += weight_[k];
    } else {
      for (std::size_t k = 0; k < leaf_.size(); ++k) {
        const CubeId q = arg_[tree_.leaf(k)];
        g[q] += weight_[k] / vol_[q];
      }
      for (CubeId id = 1; id < tree_.size(); ++id) g[id] += g[tree_.parent(id)];
    }
    return phi;
  }

  // phi(x) >= weights[i] * x_i for every x >= 0
  std::vector<double> box_weights() const {
    std::vector<double> w(tree_.size());
    for (CubeId id = 0; id < tree_.size(); ++id) {
      if (ball_ == Ball::kNtMax) {
        w[id] = std::pow(vol_[id], 1.0 / e_);
      } else {
        w[id] = std::isinf(e_) ? 1.0 / vol_[id] : std::pow(vol_[id], 1.0 / e_ - 1.0);
      }
    }
    return w;
  }

 private:
  void leaf_values(const std::vector<double>& x) const {
    const std::size_t size = tree_.size();
    run_.resize(size);
    arg_.resize(size);
    if (ball_ == Ball::kNtMax) {
      run_.assign(x.begin(), x.end());
    } else {
      run_.assign(x.begin(), x.end());
      for (CubeId id = size; id-- > 1;) run_[tree_.parent(id)] += run_[id];
      for (CubeId id = 0; id < size; ++id) run_[id] /= vol_[id];
    }
    arg_[0] = 0;
    for (CubeId id = 1; id < size; ++id) {
      const CubeId par = tree_.parent(id);
      if (run_[par] >= run_[id]) {
        run_[id] = run_[par];
        arg_[id] = arg_[par];
      } else {
        arg_[id] = id;
      }
    }
    leaf_.resize(tree_.leaf_count());
    for (std::size_t k = 0; k < leaf_.size(); ++k) leaf_[k] = run_[tree_.leaf(k)];
  }

  const DyadicTree& tree_;
  Ball ball_;
  double e_;
  double w_;
  std::vector<double> vol_;
  mutable std::vector<double> run_;
  mutable std::vector<CubeId> arg_;
  mutable std::vector<double> leaf_;
  mutable std::vector<double> weight_;
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

// Euclidean projection onto {x >= 0, sum x = 1}.
void project_simplex(std::vector<double>& x) {
  std::vector<double> u(x);
  std::sort(u.begin(), u.end(), std::greater<>());
  double cum = 0.0;
  double theta = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    cum += u[i];
    const double t = (cum - 1.0) / static_cast<double>(i + 1);
    if (u[i] - t > 0.0) theta = t;
  }
  for (auto& v : x) v = std::max(0.0, v - theta);
}

void normalize_simplex(std::vector<double>& x) {
  const double s = std::accumulate(x.begin(), x.end(), 0.0);
  if (s > 0.0) {
    for (auto& v : x) v /= s;
  } else {
    std::fill(x.begin(), x.end(), 1.0 / static_cast<double>(x.size()));
  }
}

struct Candidate {
  std::vector<double> x;
  double ratio = 0.0;
};

OracleResult solve_dual_norm(const DyadicField& given, double exponent, Ball ball, const DyadicField* warm,
                             const OracleOptions& opt) {
  const DyadicTree& tree = given.tree();
  if (tree.size() > opt.max_cubes) {
    throw std::length_error("oracle: tree has " + std::to_string(tree.size()) + " cubes, cap is " +
                            std::to_string(opt.max_cubes));
  }
  const std::size_t dim = tree.size();
  const std::vector<double> c(given.values().begin(), given.values().end());
  OracleResult res;
  res.argmax = DyadicField(given.tree_ptr());
  if (given.is_zero()) {
    res.certified = true;
    return res;
  }

  const BallNorm norm(tree, ball, exponent);
  auto ratio_of = [&](const std::vector<double>& x) {
    const double phi = norm.value(x);
    return phi > 0.0 ? dot(c, x) / phi : 0.0;
  };

  // starts: warm construction, vertices, barycenter, random Dirichlet points
  std::vector<std::vector<double>> starts;
  if (warm != nullptr && !warm->is_zero()) starts.emplace_back(warm->values().begin(), warm->values().end());
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<double> v(dim, 0.0);
    v[i] = 1.0;
    starts.push_back(std::move(v));
  }
  starts.emplace_back(dim, 1.0);
  std::mt19937_64 rng(opt.seed);
  std::exponential_distribution<double> expo(1.0);
  while (starts.size() < static_cast<std::size_t>(std::max(opt.starts, 1))) {
    std::vector<double> v(dim);
    for (auto& e : v) e = expo(rng);
    starts.push_back(std::move(v));
  }

  Candidate best;
  std::vector<Candidate> finals;
  std::vector<double> g;
  std::vector<double> grad(dim);
  constexpr int kStall = 200;
  for (auto& x : starts) {
    normalize_simplex(x);
    Candidate local{x, ratio_of(x)};
    int last_improve = 0;
    for (int k = 0; k < opt.max_iterations; ++k) {
      ++res.ascent_iterations;
      const double phi = norm.subgradient(x, g);
      if (!(phi > 0.0)) break;
      const double r = dot(c, x) / phi;
      double gn = 0.0;
      for (std::size_t i = 0; i < dim; ++i) {
        grad[i] = (c[i] - r * g[i]) / phi;
        gn += grad[i] * grad[i];
      }
      gn = std::sqrt(gn);
      if (gn == 0.0) break;
      const double step = 0.25 / std::sqrt(static_cast<double>(k) + 1.0);
      for (std::size_t i = 0; i < dim; ++i) x[i] += step * grad[i] / gn;
      project_simplex(x);
      const double rx = ratio_of(x);
      if (rx > local.ratio * (1.0 + opt.rel_stop)) {
        local.ratio = rx;
        local.x = x;
        last_improve = k;
      } else if (k - last_improve > kStall) {
        break;
      }
    }
    if (local.ratio > best.ratio) best = local;
    finals.push_back(std::move(local));
  }

  // cutting planes: upper bound from the LP relaxation, lower bound from its solutions
  detail::CutLp lp(c, norm.box_weights());
  for (const auto& f : finals) {
    if (norm.subgradient(f.x, g) > 0.0) lp.add_cut(g);
  }
  std::vector<double> x;
  double upper = 0.0;
  for (int round = 0; round < opt.max_iterations; ++round) {
    ++res.cutting_rounds;
    if (!lp.solve(x, upper)) break;
    const double rx = ratio_of(x);
    if (rx > best.ratio) best = Candidate{x, rx};
    if (upper <= best.ratio * (1.0 + opt.tolerance)) break;
    if (!(norm.subgradient(x, g) > 0.0)) break;
    lp.add_cut(g);
  }

  res.value = best.ratio;
  res.upper_bound = std::max(upper, best.ratio);
  res.certified = res.upper_bound <= res.value * (1.0 + opt.tolerance);
  const double phi = norm.value(best.x);
  std::vector<double> arg(dim, 0.0);
  if (phi > 0.0) {
    for (std::size_t i = 0; i < dim; ++i) arg[i] = best.x[i] / phi;
  }
  res.argmax = DyadicField(given.tree_ptr(), std::move(arg));
  return res;
}

// Straight-from-the-definition evaluation for the grid layer.
class BruteForceNorm {
 public:
  BruteForceNorm(const DyadicTree& tree, Ball ball, double exponent)
      : ball_(ball), e_(exponent), w_(tree.leaf_volume()) {
    std::vector<DyadicCube> cubes;
    for (CubeId id = 0; id < tree.size(); ++id) cubes.push_back(tree.cube(id));
    vol_.resize(cubes.size());
    for (std::size_t i = 0; i < cubes.size(); ++i) vol_[i] = cubes[i].volume();
    ancestors_.resize(tree.leaf_count());
    for (std::size_t k = 0; k < tree.leaf_count(); ++k) {
      const DyadicCube leaf = tree.cube(tree.leaf(k));
      for (std::size_t i = 0; i < cubes.size(); ++i) {
        if (cubes[i].contains(leaf)) ancestors_[k].push_back(i);
      }
    }
    below_.resize(cubes.size());
    for (std::size_t i = 0; i < cubes.size(); ++i) {
      for (std::size_t j = 0; j < cubes.size(); ++j) {
        if (cubes[i].contains(cubes[j])) below_[i].push_back(j);
      }
    }
    leaf_.resize(tree.leaf_count());
    per_cube_.resize(cubes.size());
  }

  double operator()(const std::vector<double>& x) {
    if (ball_ == Ball::kNtMax) {
      per_cube_ = x;
    } else {
      for (std::size_t i = 0; i < x.size(); ++i) {
        double s = 0.0;
        for (std::size_t j : below_[i]) s += x[j];
        per_cube_[i] = s / vol_[i];
      }
    }
    for (std::size_t k = 0; k < leaf_.size(); ++k) {
      double m = 0.0;
      for (std::size_t i : ancestors_[k]) m = std::max(m, per_cube_[i]);
      leaf_[k] = m;
    }
    return lp_of(leaf_, e_, w_);
  }

 private:
  Ball ball_;
  double e_;
  double w_;
  std::vector<double> vol_;
  std::vector<std::vector<std::size_t>> ancestors_;
  std::vector<std::vector<std::size_t>> below_;
  std::vector<double> leaf_;
  std::vector<double> per_cube_;
};

}  // namespace

OracleResult dual_norm_wrt_ntball(const DyadicField& b, double p, const OracleOptions& options) {
  if (!(p >= 1.0) || std::isinf(p)) throw std::invalid_argument("dual_norm_wrt_ntball: need 1 <= p < inf");
  if (b.tree().size() > options.max_cubes) return solve_dual_norm(b, p, Ball::kNtMax, nullptr, options);
  const Extremizer warm = extremal_f_for_carleson(b, conjugate(p));
  return solve_dual_norm(b, p, Ball::kNtMax, &warm.field, options);
}

OracleResult dual_norm_wrt_cball(const DyadicField& a, double p_prime, const OracleOptions& options) {
  if (!(p_prime > 1.0)) throw std::invalid_argument("dual_norm_wrt_cball: need 1 < p' <= inf");
  if (a.tree().size() > options.max_cubes) return solve_dual_norm(a, p_prime, Ball::kCarleson, nullptr, options);
  const Extremizer warm =
      std::isinf(p_prime) ? extremal_g_for_ntmax_p1(a) : extremal_g_for_ntmax(a, conjugate(p_prime));
  return solve_dual_norm(a, p_prime, Ball::kCarleson, &warm.field, options);
}

double exhaustive_dual_norm(const DyadicField& given, double exponent, Ball ball, const ExhaustiveOptions& options) {
  const DyadicTree& tree = given.tree();
  if (tree.size() > options.max_cubes) {
    throw std::length_error("exhaustive oracle: tree has " + std::to_string(tree.size()) + " cubes, cap is " +
                            std::to_string(options.max_cubes));
  }
  if (options.levels < 2) throw std::invalid_argument("exhaustive oracle: need at least 2 levels");
  const std::size_t dim = tree.size();
  const std::vector<double> c(given.values().begin(), given.values().end());
  BruteForceNorm norm(tree, ball, exponent);
  auto ratio_of = [&](const std::vector<double>& x) {
    const double phi = norm(x);
    return phi > 0.0 ? dot(c, x) / phi : 0.0;
  };

  const double h0 = 1.0 / (options.levels - 1);
  std::vector<int> digits(dim, 0);
  std::vector<double> x(dim, 0.0);
  std::vector<double> best_x(dim, 0.0);
  double best = 0.0;
  while (true) {
    std::size_t d = dim;
    while (d > 0) {
      if (++digits[d - 1] < options.levels) break;
      digits[d - 1] = 0;
      --d;
    }
    if (d == 0) break;
    for (std::size_t i = 0; i < dim; ++i) x[i] = digits[i] * h0;
    const double r = ratio_of(x);
    if (r > best) {
      best = r;
      best_x = x;
    }
  }

  const int span = 2 * options.zoom_radius + 1;
  double h = 0.5 * h0;
  for (int round = 0; round < options.zoom_rounds; ++round) {
    const std::vector<double> center = best_x;
    std::vector<int> off(dim, 0);
    while (true) {
      for (std::size_t i = 0; i < dim; ++i) x[i] = std::max(0.0, center[i] + (off[i] - options.zoom_radius) * h);
      const double r = ratio_of(x);
      if (r > best) {
        best = r;
        best_x = x;
      }
      std::size_t d = dim;
      while (d > 0) {
        if (++off[d - 1] < span) break;
        off[d - 1] = 0;
        --d;
      }
      if (d == 0) break;
    }
    h *= 0.5;
  }
  return best;
}

ExtremizerComparison oracle_vs_extremizer(const DyadicField& field, double exponent, Ball ball,
                                          const OracleOptions& options) {
  ExtremizerComparison out;
  if (ball == Ball::kNtMax) {
    const Extremizer ext = extremal_f_for_carleson(field, conjugate(exponent));
    out.extremizer_value = ext.report.nt_norm > 0.0 ? ext.report.pairing / ext.report.nt_norm : 0.0;
    out.oracle_value = dual_norm_wrt_ntball(field, exponent, options).value;
    out.extremizer_normalized = ext.report.ratio;
    if (ext.report.carleson_norm > 0.0) out.oracle_normalized = out.oracle_value / ext.report.carleson_norm;
  } else {
    const Extremizer ext = std::isinf(exponent) ? extremal_g_for_ntmax_p1(field)
                                                : extremal_g_for_ntmax(field, conjugate(exponent));
    out.extremizer_value = ext.report.carleson_norm > 0.0 ? ext.report.pairing / ext.report.carleson_norm : 0.0;
    out.oracle_value = dual_norm_wrt_cball(field, exponent, options).value;
    out.extremizer_normalized = ext.report.ratio;
    if (ext.report.nt_norm > 0.0) out.oracle_normalized = out.oracle_value / ext.report.nt_norm;
  }
  out.defined = out.oracle_value > 0.0 && out.extremizer_value > 0.0;
  out.ratio = out.defined ? out.extremizer_value / out.oracle_value : 0.0;
  return out;
}

}  // namespace dyadic
