#include <gtest/gtest.h>

#include <cmath>

#include "dyadic/continuum.hpp"
#include "dyadic/functionals.hpp"

using namespace dyadic;

namespace {
GridFunction constant_grid(const TreePtr& tree, int m, double v) {
  GridFunction g(tree, m);
  return GridFunction(tree, m, std::vector<double>(g.size(), v));
}
}  // namespace

TEST(CompareNt, ConstantGivesRatioOne) {
  const auto t = DyadicTree::make(TreeConfig{1, 3});
  for (double q : {1.0, 2.0, kInf}) {
    const auto r = compare_nt_norms(constant_grid(t, 2, 1.5), 2.0, q, GeometryConfig{});
    EXPECT_NEAR(r.continuum, 1.5, 1e-14);
    EXPECT_NEAR(r.dyadic, 1.5, 1e-14);
    EXPECT_NEAR(r.ratio, 1.0, 1e-14);
  }
}

TEST(CompareNt, ScaleInvariantAndIndicator) {
  const auto t = DyadicTree::make(TreeConfig{1, 2});
  const GridFunction f = random_grid(0, t, 2, DataSpec::parse("delta:1:0"));
  const auto a = compare_nt_norms(f, 1.0, 1.0, GeometryConfig{});
  const auto b = compare_nt_norms(f.scaled(4.0), 1.0, 1.0, GeometryConfig{});
  EXPECT_GT(a.continuum, 0.0);
  EXPECT_GT(a.dyadic, 0.0);
  EXPECT_NEAR(a.ratio, b.ratio, 1e-13);
  const auto fine = compare_nt_norms(f.refined(2), 1.0, 1.0, GeometryConfig{});
  EXPECT_LT(std::abs(fine.ratio / a.ratio - 1.0), 0.2);
}

TEST(CompareCarleson, ConstantZeroAndScale) {
  const auto t = DyadicTree::make(TreeConfig{1, 3});
  const auto family = test_cube_family(t->config(), 1);
  const auto one = compare_carleson_norms(constant_grid(t, 2, 1.0), 2.0, 2.0, GeometryConfig{}, family);
  const auto three = compare_carleson_norms(constant_grid(t, 2, 3.0), 2.0, 2.0, GeometryConfig{}, family);
  EXPECT_NEAR(one.ratio, 1.0, 1e-14);
  EXPECT_NEAR(three.continuum, 3.0 * one.continuum, 1e-13);
  EXPECT_NEAR(three.ratio, one.ratio, 1e-14);
  const auto zero = compare_carleson_norms(GridFunction(t, 2), 2.0, 2.0, GeometryConfig{}, family);
  EXPECT_FALSE(zero.defined);
  EXPECT_EQ(zero.ratio, 0.0);
}

TEST(Tent, PreconditionZeroAndScale) {
  const auto t = DyadicTree::make(TreeConfig{1, 3});
  const auto family = test_cube_family(t->config(), 1);
  EXPECT_THROW(tent_space_check(constant_grid(t, 2, 1.0), 2.0, GeometryConfig{}, family), std::invalid_argument);
  const auto z = tent_space_check(GridFunction(t, 2), 4.0, GeometryConfig{}, family);
  EXPECT_EQ(z.carleson, 0.0);
  EXPECT_EQ(z.area, 0.0);
  const GridFunction g = random_grid(1, t, 2, DataSpec::parse("lognormal"));
  const auto a = tent_space_check(g, 4.0, GeometryConfig{}, family);
  const auto b = tent_space_check(g.scaled(0.5), 4.0, GeometryConfig{}, family);
  EXPECT_NEAR(a.ratio, b.ratio, 1e-12);
}

TEST(Tent, ConstantDataDirectEvaluation) {
  const auto t = DyadicTree::make(TreeConfig{1, 3});
  const auto family = test_cube_family(t->config(), 1);
  const auto r = tent_space_check(constant_grid(t, 2, 1.0), 4.0, GeometryConfig{}, family);
  EXPECT_NEAR(r.carleson, std::sqrt(1.0 - 1.0 / 16.0), 1e-14);
  EXPECT_NEAR(r.area, boundary_lp_norm(area_integral(constant_grid(t, 2, 1.0)), 4.0), 1e-14);
  EXPECT_TRUE(r.defined);
}

TEST(Equivalence, RowIsDeterministic) {
  const DataSpec spec = DataSpec::parse("lognormal");
  const auto a = equivalence_row(3, TreeConfig{1, 4}, 2, 2.0, 2.0, 2.0, 2.0, GeometryConfig{}, 2, spec);
  const auto b = equivalence_row(3, TreeConfig{1, 4}, 2, 2.0, 2.0, 2.0, 2.0, GeometryConfig{}, 2, spec);
  EXPECT_EQ(a.nt.ratio, b.nt.ratio);
  EXPECT_EQ(a.carleson_fine.ratio, b.carleson_fine.ratio);
  EXPECT_GE(a.carleson_fine.continuum, a.carleson.continuum);
}

TEST(Envelope, AddAndContains) {
  Envelope e;
  e.add(1.0);
  e.add(0.5);
  e.add(2.0);
  EXPECT_EQ(e.count, 3u);
  EXPECT_TRUE(e.contains(1.9));
  EXPECT_FALSE(e.contains(2.1));
  EXPECT_TRUE(e.contains(2.1, 0.1));
}
