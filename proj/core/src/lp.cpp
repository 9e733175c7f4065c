#include "lp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <limits>
#include <stdexcept>

namespace dyadic::detail {

namespace {
constexpr double kPivotEps = 1e-12;
constexpr double kCostEps = 1e-13;
constexpr int kDegenerateSwitch = 50;
}  // namespace

CutLp::CutLp(std::vector<double> objective, const std::vector<double>& weights)
    : dim_(objective.size()), c_(std::move(objective)) {
  if (weights.size() != dim_) throw std::invalid_argument("CutLp: weight/objective size mismatch");
  for (std::size_t i = 0; i < dim_; ++i) {
    if (!(weights[i] > 0.0)) throw std::invalid_argument("CutLp: box weights must be positive");
    if (c_[i] < 0.0) throw std::invalid_argument("CutLp: objective must be nonnegative");
    std::vector<double> g(dim_, 0.0);
    g[i] = weights[i];
    cuts_.push_back(std::move(g));
    basis_.push_back(dim_ + i);
  }
}

void CutLp::add_cut(std::vector<double> g) {
  if (g.size() != dim_) throw std::invalid_argument("CutLp: cut has wrong size");
  cuts_.push_back(std::move(g));
}

void CutLp::column(std::size_t col, std::vector<double>& out) const {
  out.assign(dim_, 0.0);
  if (col < dim_) {
    out[col] = -1.0;
  } else {
    out = cuts_[col - dim_];
  }
}

bool CutLp::solve(std::vector<double>& x, double& value, int max_pivots) {
  const auto n = static_cast<Eigen::Index>(dim_);
  const std::size_t total = dim_ + cuts_.size();
  Eigen::Map<const Eigen::VectorXd> c(c_.data(), n);
  Eigen::MatrixXd bmat(n, n);
  Eigen::VectorXd cb(n);
  std::vector<double> col;
  std::vector<char> in_basis(total, 0);
  std::vector<char> blocked(total, 0);
  int degenerate_run = 0;

  for (int pivot = 0; pivot <= max_pivots; ++pivot) {
    std::fill(in_basis.begin(), in_basis.end(), 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      const std::size_t bc = basis_[static_cast<std::size_t>(i)];
      in_basis[bc] = 1;
      column(bc, col);
      for (Eigen::Index r = 0; r < n; ++r) bmat(r, i) = col[static_cast<std::size_t>(r)];
      cb(i) = cost(bc);
    }
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(bmat);
    Eigen::VectorXd xb = lu.solve(c);
    for (Eigen::Index i = 0; i < n; ++i) xb(i) = std::max(0.0, xb(i));
    const Eigen::VectorXd pi = lu.transpose().solve(cb);

    // pricing: Dantzig, falling back to Bland after a run of degenerate pivots
    const bool bland = degenerate_run >= kDegenerateSwitch;
    std::size_t enter = total;
    double best = -kCostEps;
    for (std::size_t j = 0; j < total; ++j) {
      if (in_basis[j] || blocked[j]) continue;
      double d = cost(j);
      if (j < dim_) {
        d += pi(static_cast<Eigen::Index>(j));
      } else {
        const auto& g = cuts_[j - dim_];
        for (std::size_t r = 0; r < dim_; ++r) d -= g[r] * pi(static_cast<Eigen::Index>(r));
      }
      if (d < best) {
        best = d;
        enter = j;
        if (bland) break;
      }
    }

    if (enter == total) {
      x.resize(dim_);
      for (std::size_t i = 0; i < dim_; ++i) x[i] = std::max(0.0, pi(static_cast<Eigen::Index>(i)));
      value = cb.dot(xb);
      return true;
    }

    column(enter, col);
    const Eigen::VectorXd u = lu.solve(Eigen::Map<const Eigen::VectorXd>(col.data(), n));
    Eigen::Index leave = -1;
    double step = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i) {
      if (u(i) <= kPivotEps) continue;
      const double ratio = xb(i) / u(i);
      if (ratio < step - 1e-15 ||
          (ratio <= step + 1e-15 && leave >= 0 &&
           basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])) {
        step = ratio;
        leave = i;
      }
    }
    if (leave < 0) {
      // No pivot row. The primal is feasible (x = 0), so this is round-off in
      // the basis solve; price this column out and keep the current basis.
      blocked[enter] = 1;
      continue;
    }
    std::fill(blocked.begin(), blocked.end(), 0);
    degenerate_run = step <= 1e-15 ? degenerate_run + 1 : 0;
    basis_[static_cast<std::size_t>(leave)] = enter;
  }
  return false;
}

}  // namespace dyadic::detail
