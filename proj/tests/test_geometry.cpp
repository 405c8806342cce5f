#include <gtest/gtest.h>

#include <cmath>

#include "gifstile/geometry.hpp"
#include "support.hpp"

namespace gifstile {
namespace {

Polygon unit_square() { return {{0, 0}, {1, 0}, {1, 1}, {0, 1}}; }

TEST(Geometry, PolygonRegion) {
  const PolygonRegion sq(unit_square());
  EXPECT_TRUE(sq.contains({0.5, 0.5}));
  EXPECT_FALSE(sq.contains({1.5, 0.5}));
  EXPECT_NEAR(sq.inner_distance({0.5, 0.5}), 0.5, 1e-15);
  EXPECT_NEAR(sq.inner_distance({0.1, 0.7}), 0.1, 1e-15);
  EXPECT_EQ(sq.inner_distance({2, 2}), 0.0);
  EXPECT_EQ(sq.bbox().hi, Point2(1, 1));

  // L-shape: the notch is outside.
  const PolygonRegion chair({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}});
  EXPECT_FALSE(chair.contains({1.5, 1.5}));
  EXPECT_TRUE(chair.contains({0.5, 1.5}));
}

TEST(Geometry, PolygonSamplingStaysInside) {
  const PolygonRegion chair({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}});
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) EXPECT_TRUE(chair.contains(chair.sample(rng)));
}

TEST(Geometry, TransformedRegion) {
  auto base = std::make_shared<PolygonRegion>(unit_square());
  const TransformedRegion r(base, Similarity::planar(2, 90, false, 5, 0));
  // Image is [3,5] x [0,2].
  EXPECT_TRUE(r.contains({4, 1}));
  EXPECT_FALSE(r.contains({1, 1}));
  EXPECT_NEAR(r.inner_distance({4, 1}), 1.0, 1e-12);
  EXPECT_NEAR(r.bbox().lo.x(), 3, 1e-12);
  EXPECT_NEAR(r.bbox().hi.y(), 2, 1e-12);
}

TEST(Geometry, RasterOfSquareCloud) {
  const int n = 200;
  Cloud c(2, n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) c.col(i * n + j) << (i + 0.5) / n, (j + 0.5) / n;
  }
  const RasterRegion r(c, 0.01, 0.02);
  EXPECT_TRUE(r.contains({0.5, 0.5}));
  EXPECT_FALSE(r.contains({1.2, 0.5}));
  EXPECT_NEAR(r.inner_distance({0.5, 0.5}), 0.5, 0.03);
  EXPECT_NEAR(r.inner_distance({0.2, 0.5}), 0.2, 0.03);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) EXPECT_TRUE(r.contains(r.sample(rng)));
}

TEST(Geometry, ShapesFromCloudApproximateHint) {
  const Gifs sq = test::bundled("square");
  const ComponentShapes hinted(sq);
  EXPECT_TRUE(hinted.exact());
  EXPECT_NEAR(hinted.anchor(1).x(), 0.5, 1e-12);
  EXPECT_NEAR(hinted.radius(1), std::sqrt(0.5), 1e-12);

  const ComponentShapes raster(sq, {.points_per_component = 1 << 14, .use_hints = false});
  EXPECT_FALSE(raster.exact());
  EXPECT_NEAR(raster.anchor(1).x(), 0.5, 0.02);
  EXPECT_NEAR(raster.anchor(1).y(), 0.5, 0.02);
  EXPECT_NEAR(raster.shape(1)->inner_distance({0.5, 0.5}), 0.5, 0.03);
  EXPECT_FALSE(raster.shape(1)->contains({1.1, 0.5}));
}

TEST(Geometry, SquarePatchHasNoOverlapAndArea64) {
  const Gifs sq = test::bundled("square");
  const ComponentShapes shapes(sq);
  const Patch p = patch(sq, test::theta(sq.graph(), {}, {"1", "2", "3", "4"}), kind::Uniform{}, 3);
  const OverlapStats o = pairwise_overlap(shapes, p, 1000, 1);
  EXPECT_GT(o.pairs_checked, 0u);
  EXPECT_EQ(o.pairs_over, 0u);
  EXPECT_LE(o.worst_fraction, 0.05);
  EXPECT_NEAR(union_measure(shapes, p, 20000, 1), 64.0, 0.64);
}

TEST(Geometry, OverlapDetected) {
  const Gifs sq = test::bundled("square");
  const ComponentShapes shapes(sq);
  Patch p = patch(sq, test::theta(sq.graph(), {}, {"1"}), kind::Uniform{}, 1);
  p.tiles[1].transform = p.tiles[0].transform;
  const OverlapStats o = pairwise_overlap(shapes, p, 500, 1);
  EXPECT_GE(o.pairs_over, 1u);
  EXPECT_GT(o.worst_fraction, 0.9);
}

TEST(Geometry, PatchUnionContainsTiles) {
  const Gifs am = test::bundled("ammann");
  const ComponentShapes shapes(am);
  const ThetaParam th = test::theta(am.graph(), {}, {"1", "2"});
  const auto u = patch_union(am, shapes, th, 4);
  for (const Tile& t : patch(am, th, kind::Balanced{}, 4).tiles) {
    EXPECT_TRUE(u->contains(tile_anchor(shapes, t)));
  }
}

}  // namespace
}  // namespace gifstile
