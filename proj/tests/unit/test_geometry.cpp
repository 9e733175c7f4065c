#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dyadic/geometry.hpp"

using namespace dyadic;

namespace {

DyadicCube cube(int level, std::vector<std::int64_t> index) { return DyadicCube{level, std::move(index)}; }

}  // namespace

TEST(TreeConfig, CountsCubesAndLeaves) {
  EXPECT_EQ((TreeConfig{1, 3}.num_cubes()), 15u);
  EXPECT_EQ((TreeConfig{2, 2}.num_cubes()), 21u);
  EXPECT_EQ((TreeConfig{2, 2}.num_leaves()), 16u);
  EXPECT_EQ((TreeConfig{3, 0}.num_cubes()), 1u);
  EXPECT_THROW((TreeConfig{0, 2}.validate()), std::invalid_argument);
  EXPECT_THROW((TreeConfig{1, -1}.validate()), std::invalid_argument);
}

TEST(Children, BisectsTheUnitInterval) {
  const auto kids = children(cube(0, {0}), TreeConfig{1, 2});
  ASSERT_EQ(kids.size(), 2u);
  EXPECT_EQ(kids[0], cube(1, {0}));
  EXPECT_EQ(kids[1], cube(1, {1}));
}

TEST(Children, QuartersTheUnitSquare) {
  const auto kids = children(cube(0, {0, 0}), TreeConfig{2, 1});
  ASSERT_EQ(kids.size(), 4u);
  for (const auto& k : kids) {
    EXPECT_EQ(k.level, 1);
    EXPECT_DOUBLE_EQ(k.volume(), 0.25);
  }
}

TEST(Children, LeafHasNone) { EXPECT_TRUE(children(cube(1, {0}), TreeConfig{1, 1}).empty()); }

TEST(Ancestors, BinaryExpansionOfPoint) {
  const auto chain = ancestors_of_point({0.6}, TreeConfig{1, 2});
  ASSERT_EQ(chain.size(), 3u);
  EXPECT_EQ(chain[0], cube(0, {0}));
  EXPECT_EQ(chain[1], cube(1, {1}));
  EXPECT_EQ(chain[2], cube(2, {2}));
}

TEST(Ancestors, DepthZeroAndTwoDimensions) {
  EXPECT_EQ(ancestors_of_point({0.37}, TreeConfig{1, 0}).size(), 1u);
  const auto chain = ancestors_of_point({0.1, 0.9}, TreeConfig{2, 1});
  ASSERT_EQ(chain.size(), 2u);
  EXPECT_EQ(chain[1], cube(1, {0, 1}));
}

TEST(Ancestors, OutsideBaseCubeThrows) {
  EXPECT_THROW(ancestors_of_point({1.0}, TreeConfig{1, 2}), std::out_of_range);
  EXPECT_THROW(ancestors_of_point({-0.1}, TreeConfig{1, 2}), std::out_of_range);
}

TEST(Regions, WhitneyAndCarlesonBoxes) {
  const Box w = whitney_region(cube(1, {0}));
  EXPECT_DOUBLE_EQ(w.t_lo, 0.25);
  EXPECT_DOUBLE_EQ(w.t_hi, 0.5);
  EXPECT_DOUBLE_EQ(w.x_lo[0], 0.0);
  EXPECT_DOUBLE_EQ(w.x_hi[0], 0.5);
  EXPECT_DOUBLE_EQ(w.volume(), 0.125);

  const Box c = carleson_box(cube(0, {0}));
  EXPECT_DOUBLE_EQ(c.t_lo, 0.0);
  EXPECT_DOUBLE_EQ(c.t_hi, 1.0);
  EXPECT_DOUBLE_EQ(c.volume(), 1.0);

  EXPECT_DOUBLE_EQ(whitney_region(cube(0, {0, 0})).volume(), 0.5);
}

TEST(Regions, WhitneyVolumesPerLevel) {
  const auto tree = DyadicTree::make(TreeConfig{2, 3});
  for (int j = 0; j <= 3; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < tree->level_count(j); ++i) s += tree->whitney(tree->level_offset(j) + i).volume();
    EXPECT_DOUBLE_EQ(s, std::ldexp(1.0, -j - 1));
  }
}

TEST(ContinuumWhitney, ClippedAtTop) {
  const Box b = continuum_whitney(0.5, {0.5}, GeometryConfig{});
  EXPECT_DOUBLE_EQ(b.t_lo, 0.25);
  EXPECT_DOUBLE_EQ(b.t_hi, 1.0);
  EXPECT_DOUBLE_EQ(b.x_lo[0], 0.25);
  EXPECT_DOUBLE_EQ(b.x_hi[0], 0.75);
}

TEST(ContinuumWhitney, ClippedAtCorner) {
  const Box b = continuum_whitney(1.0, {0.0}, GeometryConfig{});
  EXPECT_DOUBLE_EQ(b.t_lo, 0.5);
  EXPECT_DOUBLE_EQ(b.t_hi, 1.0);
  EXPECT_DOUBLE_EQ(b.x_lo[0], 0.0);
  EXPECT_DOUBLE_EQ(b.x_hi[0], 0.5);
}

TEST(ContinuumWhitney, UnclippedVolumeAndErrors) {
  GeometryConfig geo;
  geo.c0 = 3.0;
  geo.c1 = 0.25;
  EXPECT_DOUBLE_EQ(continuum_whitney_volume(0.1, 2, geo), (3.0 - 1.0 / 3.0) * 0.1 * 0.05 * 0.05);
  EXPECT_THROW(continuum_whitney(0.0, {0.5}, GeometryConfig{}), std::invalid_argument);
  geo.c0 = 1.0;
  EXPECT_THROW(geo.validate(), std::invalid_argument);
}

TEST(TestCubeFamily, ExhaustiveCounts) {
  EXPECT_EQ(test_cube_family(TreeConfig{1, 1}, 1).size(), 3u);
  EXPECT_EQ(test_cube_family(TreeConfig{1, 2}, 1).size(), 10u);
  // n = 2, D = 2: sum over sides s of (4 - s + 1)^2
  EXPECT_EQ(test_cube_family(TreeConfig{2, 2}, 1).size(), 16u + 9u + 4u + 1u);
}

TEST(TestCubeFamily, ContainsDyadicCubesForAnyStride) {
  const TreeConfig cfg{1, 4};
  const auto tree = DyadicTree::make(cfg);
  for (int stride : {1, 2, 3, 5, 16}) {
    const auto family = test_cube_family(cfg, stride);
    for (CubeId id = 0; id < tree->size(); ++id) {
      const auto c = tree->cube(id);
      const std::int64_t side = std::int64_t{1} << (4 - c.level);
      const bool found = std::any_of(family.begin(), family.end(), [&](const GridCube& g) {
        return g.side == side && g.offset[0] == c.index[0] * side;
      });
      EXPECT_TRUE(found) << "stride " << stride << " cube " << id;
    }
    for (const auto& g : family) EXPECT_LE(g.offset[0] + g.side, 16);
  }
}

TEST(DyadicTree, ParentChildConsistency) {
  const auto tree = DyadicTree::make(TreeConfig{2, 3});
  for (CubeId id = 0; id < tree->size(); ++id) {
    EXPECT_EQ(tree->id_of(tree->cube(id)), id);
    const auto kids = tree->children(id);
    if (tree->is_leaf(id)) {
      EXPECT_TRUE(kids.empty());
      continue;
    }
    ASSERT_EQ(kids.size(), 4u);
    double vol = 0.0;
    for (CubeId k : kids) {
      EXPECT_EQ(tree->parent(k), id);
      EXPECT_GT(k, id);
      EXPECT_TRUE(tree->cube(id).contains(tree->cube(k)));
      vol += tree->volume(k);
    }
    EXPECT_DOUBLE_EQ(vol, tree->volume(id));
  }
}

TEST(DyadicTree, NestingOfLeaves) {
  const auto tree = DyadicTree::make(TreeConfig{1, 4});
  for (CubeId id = 1; id < tree->size(); ++id) {
    const auto mine = tree->leaves_of(id);
    const auto up = tree->leaves_of(tree->parent(id));
    for (auto k : mine) EXPECT_NE(std::find(up.begin(), up.end(), k), up.end());
  }
}
