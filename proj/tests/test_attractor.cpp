#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "gifstile/attractor.hpp"
#include "gifstile/point_index.hpp"
#include "support.hpp"

namespace gifstile {
namespace {

// Largest distance from a (n+1) x (n+1) grid over [0,1]^2 to the cloud.
double grid_to_cloud(const Cloud& c, int n) {
  const PointIndex index(c);
  double worst = 0;
  Vec q(2);
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      q << static_cast<double>(i) / n, static_cast<double>(j) / n;
      worst = std::max(worst, index.nearest_distance(q));
    }
  }
  return worst;
}

TEST(Attractor, SquareCloudNearUnitSquare) {
  const Gifs g = test::bundled("square");
  const AttractorApprox a = attractor(g, 8, std::size_t{1} << 16);
  const Cloud& c = a.cloud(1);
  EXPECT_EQ(c.cols(), 1 << 16);
  EXPECT_GE(c.minCoeff(), -1e-12);
  EXPECT_LE(c.maxCoeff(), 1 + 1e-12);
  EXPECT_LE(grid_to_cloud(c, 256), a.error_bound());
  EXPECT_NEAR(a.diameter_bound, std::pow(0.5, 8) * a.seed_diameter, 1e-15);
}

TEST(Attractor, ZeroIterationsGivesSeeds) {
  const Gifs g = test::bundled("square");
  const AttractorApprox a = attractor(g, 0, 16);
  ASSERT_EQ(a.cloud(1).cols(), 1);
  EXPECT_NEAR(a.cloud(1)(0, 0), 0.0, 1e-15);
  EXPECT_NEAR(a.cloud(1)(1, 0), 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(a.diameter_bound, a.seed_diameter);
  EXPECT_THROW(attractor(g, -1, 16), std::invalid_argument);
}

TEST(Attractor, SeedBallsAreInvariant) {
  for (const auto& name : bundled_names()) {
    const Gifs g = test::bundled(name);
    const Seeds s = attractor_seeds(g);
    const Digraph& dg = g.graph();
    for (EdgeIndex e = 0; e < dg.edge_count(); ++e) {
      const auto t = static_cast<std::size_t>(dg.edge(e).tail - 1);
      const auto h = static_cast<std::size_t>(dg.edge(e).head - 1);
      const double reach = (g.map(e).apply(s.points[h]) - s.points[t]).norm() + g.map(e).scale() * s.radii[h];
      EXPECT_LE(reach, s.radii[t] * (1 + 1e-9)) << name;
    }
  }
}

TEST(Attractor, Hausdorff) {
  Cloud x(2, 3);
  x << 0, 1, 2, 0, 1, 0;
  EXPECT_EQ(hausdorff(x, x), 0.0);
  Cloud a(1, 1), b(1, 1);
  a << 0;
  b << 1;
  EXPECT_DOUBLE_EQ(hausdorff(a, b), 1.0);
  EXPECT_THROW(hausdorff(Cloud(2, 0), x), std::invalid_argument);
}

TEST(Attractor, HausdorffMatchesBruteForce) {
  Cloud a(2, 50), b(2, 70);
  for (int i = 0; i < 50; ++i) a.col(i) << std::sin(i * 1.3) * 3, std::cos(i * 0.7);
  for (int i = 0; i < 70; ++i) b.col(i) << std::cos(i * 2.1), std::sin(i * 0.4) * 2;
  double want = 0;
  auto directed = [](const Cloud& p, const Cloud& q) {
    double worst = 0;
    for (Eigen::Index i = 0; i < p.cols(); ++i) worst = std::max(worst, (q.colwise() - p.col(i)).colwise().norm().minCoeff());
    return worst;
  };
  want = std::max(directed(a, b), directed(b, a));
  EXPECT_NEAR(hausdorff(a, b), want, 1e-12);
}

TEST(Attractor, SquareImageWithinBound) {
  const Gifs g = test::bundled("square");
  const AttractorApprox a = attractor(g, 8, std::size_t{1} << 20);
  const auto image = apply_F(g, a.clouds);
  EXPECT_LE(hausdorff(image[0], a.cloud(1)), a.diameter_bound);
  EXPECT_NEAR(self_consistency(g, a), hausdorff(image[0], a.cloud(1)), 1e-12);
}

TEST(Attractor, SelfConsistencyOnBundled) {
  for (const auto& name : bundled_names()) {
    const Gifs g = test::bundled(name);
    const AttractorApprox a = attractor(g, 9, std::size_t{1} << 16);
    EXPECT_LE(self_consistency(g, a), 2 * a.error_bound()) << name;
  }
}

TEST(Attractor, ThinningKeepsCap) {
  const Gifs g = test::bundled("chair");
  const AttractorApprox a = attractor(g, 10, 5000);
  EXPECT_LE(a.cloud(1).cols(), 5000);
  EXPECT_GT(a.thinning_error, 0.0);
  EXPECT_LE(self_consistency(g, a), 2 * a.error_bound());
}

TEST(Nonoverlap, SquareIsBoundaryOnly) {
  const NonoverlapEstimate e = nonoverlap_estimate(test::bundled("square"), 1, {.samples = 10000});
  EXPECT_LE(e.fraction, 0.05);
}

TEST(Nonoverlap, IdenticalLoopsOverlapFully) {
  Digraph dg(1, {{"a", 1, 1, 1}, {"b", 1, 1, 1}});
  const Similarity f(0.5, Mat::Identity(2, 2), vec2(0.25, 0.25));
  const Gifs g(dg, {f, f}, 0.5);
  const NonoverlapEstimate e = nonoverlap_estimate(g, 1, {.samples = 2000});
  EXPECT_GT(e.fraction, 0.95);
}

TEST(Nonoverlap, ZeroSamples) {
  const NonoverlapEstimate e = nonoverlap_estimate(test::bundled("ammann"), 1, {.samples = 0});
  EXPECT_EQ(e.fraction, 0.0);
  EXPECT_FALSE(e.warnings.empty());
}

TEST(Nonoverlap, Deterministic) {
  const Gifs g = test::bundled("chair");
  const auto a = nonoverlap_estimate(g, 1, {.samples = 3000, .seed = 7});
  const auto b = nonoverlap_estimate(g, 1, {.samples = 3000, .seed = 7});
  EXPECT_EQ(a.fraction, b.fraction);
}

}  // namespace
}  // namespace gifstile
