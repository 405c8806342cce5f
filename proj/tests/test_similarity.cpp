#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "gifstile/gifs.hpp"
#include "gifstile/similarity.hpp"
#include "support.hpp"

namespace gifstile {
namespace {

Similarity half(double tx, double ty) { return Similarity(0.5, Mat::Identity(2, 2), vec2(tx, ty)); }

TEST(Similarity, RejectsBadInput) {
  EXPECT_THROW(Similarity(0, Mat::Identity(2, 2), vec2(0, 0)), std::invalid_argument);
  EXPECT_THROW(Similarity(1, Mat::Identity(3, 3), vec2(0, 0)), std::invalid_argument);
  Mat shear = Mat::Identity(2, 2);
  shear(0, 1) = 0.5;
  EXPECT_THROW(Similarity(1, shear, vec2(0, 0)), std::invalid_argument);
}

TEST(Similarity, ComposeIdentity) {
  const Similarity m = Similarity::planar(0.3, 30, true, 1, 2);
  EXPECT_TRUE(approx_eq(compose(Similarity::identity(2), m), m, 1e-12));
  EXPECT_TRUE(approx_eq(compose(m, Similarity::identity(2)), m, 1e-12));
}

TEST(Similarity, ComposeHalves) {
  const Similarity q = compose(half(0, 0), half(0, 0));
  EXPECT_DOUBLE_EQ(q.scale(), 0.25);
  EXPECT_EQ(q.shift(), vec2(0, 0));
}

TEST(Similarity, ComposeSquareMaps) {
  // f1 = x/2, f2 = x/2 + (1/2, 0): f2 o f1 = x/4 + (1/2, 0) and
  // f1 o f2 = x/4 + (1/4, 0).
  const Similarity f1 = half(0, 0), f2 = half(0.5, 0);
  const Similarity c = compose(f2, f1);
  EXPECT_TRUE(approx_eq(c, Similarity(0.25, Mat::Identity(2, 2), vec2(0.5, 0)), 1e-15));
  EXPECT_TRUE(c(vec2(1, 1)).isApprox(vec2(0.75, 0.25)));
  EXPECT_TRUE(approx_eq(compose(f1, f2), Similarity(0.25, Mat::Identity(2, 2), vec2(0.25, 0)), 1e-15));
}

TEST(Similarity, AssociativeAndScaleMultiplies) {
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> u(-3, 3);
  auto random_map = [&] { return Similarity::planar(0.2 + std::abs(u(rng)), 60 * u(rng), u(rng) > 0, u(rng), u(rng)); };
  for (int i = 0; i < 200; ++i) {
    const Similarity a = random_map(), b = random_map(), c = random_map();
    EXPECT_TRUE(approx_eq(compose(compose(a, b), c), compose(a, compose(b, c)), 1e-9));
    EXPECT_NEAR(compose(a, b).scale(), a.scale() * b.scale(), 1e-12 * a.scale() * b.scale());
    const Vec x = vec2(u(rng), u(rng)), y = vec2(u(rng), u(rng));
    EXPECT_NEAR((a(x) - a(y)).norm(), a.scale() * (x - y).norm(), 1e-9 * a.scale() * (x - y).norm() + 1e-12);
  }
}

TEST(Similarity, Invert) {
  EXPECT_TRUE(approx_eq(invert(Similarity::identity(2)), Similarity::identity(2), 1e-15));
  const Similarity two = invert(half(0, 0));
  EXPECT_DOUBLE_EQ(two.scale(), 2.0);
  const Similarity inv = invert(half(0.5, 0));
  EXPECT_TRUE(approx_eq(inv, Similarity(2, Mat::Identity(2, 2), vec2(-1, 0)), 1e-15));
}

TEST(Similarity, ApproxEq) {
  const Similarity m = Similarity::planar(0.7, 45, false, 3, -1);
  EXPECT_TRUE(approx_eq(m, m, 1e-9));
  const Similarity bigger(1 + 1e-3, Mat::Identity(2, 2), vec2(0, 0));
  EXPECT_FALSE(approx_eq(Similarity::identity(2), bigger, 1e-6));
  const Similarity f1 = half(0, 0);
  EXPECT_TRUE(approx_eq(compose(f1, invert(f1)), Similarity::identity(2), 1e-9));
}

TEST(Similarity, PlanarQuarterTurnsExact) {
  const Similarity r = Similarity::planar(1, 90, false, 0, 0);
  EXPECT_EQ(r.ortho()(0, 0), 0.0);
  EXPECT_EQ(r.ortho()(1, 0), 1.0);
  const Similarity m = Similarity::planar(1, 0, true, 0, 0);
  EXPECT_EQ(m(vec2(1, 2)), vec2(1, -2));
}

TEST(Similarity, FixedPoint) {
  const Similarity f = half(0.5, 0.5);
  EXPECT_TRUE(f.fixed_point().isApprox(vec2(1, 1)));
}

TEST(Similarity, MapForPathAmmann) {
  const Gifs g = test::bundled("ammann");
  const double s = *g.scaling_constant();
  EXPECT_TRUE(approx_eq(map_for_path(g, Path{1, {}}, false), Similarity::identity(2), 0));
  const Path p = test::path(g.graph(), 1, {"1", "2"});
  const Similarity f = map_for_path(g, p, false);
  EXPECT_NEAR(f.scale(), std::pow(s, 3), 1e-12);
  EXPECT_TRUE(approx_eq(f, compose(g.map(0), g.map(1)), 1e-12));
  const Similarity r = map_for_path(g, p, true);
  EXPECT_NEAR(r.scale(), std::pow(s, -3), 1e-9);
  EXPECT_TRUE(approx_eq(r, compose(invert(g.map(0)), invert(g.map(1))), 1e-9));
}

TEST(Similarity, MapForPathRejectsBrokenChain) {
  Digraph dg(2, {{"a", 1, 2, 1}, {"b", 2, 1, 1}});
  std::vector<Similarity> maps(2, half(0, 0));
  const Gifs g(dg, maps, 0.5);
  EXPECT_THROW(map_for_path(g, test::path(dg, 1, {"a", "a"}), false), std::invalid_argument);
  // Reversed: b then a chains as 1 -> 2 -> 1 backwards.
  EXPECT_NO_THROW(map_for_path(g, test::path(dg, 1, {"b", "a"}), true));
}

}  // namespace
}  // namespace gifstile
