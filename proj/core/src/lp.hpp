#pragma once

// Cutting-plane master problem
//
//     max  c.x   s.t.  g_j.x <= 1 for every cut j,  x >= 0,
//
// solved through its dual  min sum y  s.t.  sum_j y_j g_j - s = c,  y, s >= 0
// with a dense revised simplex. The dual has one row per variable of x (at
// most a few dozen here) and gains one column per cut, so new cuts keep the
// current basis feasible and each re-solve is warm. The optimal simplex
// multipliers are the primal x.

#include <cstddef>
#include <vector>

namespace dyadic::detail {

class CutLp {
 public:
  // Starts with the box cuts weights[i] * x_i <= 1 (weights > 0, c >= 0).
  CutLp(std::vector<double> objective, const std::vector<double>& weights);

  void add_cut(std::vector<double> g);
  std::size_t cut_count() const { return cuts_.size(); }

  // Returns false if the pivot limit was hit.
  bool solve(std::vector<double>& x, double& value, int max_pivots = 100000);

 private:
  std::size_t dim_;
  std::vector<double> c_;
  std::vector<std::vector<double>> cuts_;
  std::vector<std::size_t> basis_;  // column ids: < dim_ surplus, else cut (id - dim_)

  double cost(std::size_t col) const { return col < dim_ ? 0.0 : 1.0; }
  void column(std::size_t col, std::vector<double>& out) const;
};

}  // namespace dyadic::detail
