#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "gifstile/analysis.hpp"
#include "oracles/oracle.hpp"
#include "support.hpp"

namespace gifstile {
namespace {

Gifs loops(std::vector<int> weights) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < weights.size(); ++i) edges.push_back({std::to_string(i + 1), 1, 1, weights[i]});
  return test::line_gifs(1, edges);
}

TEST(Analysis, Coprime) {
  EXPECT_TRUE(is_coprime(test::bundled("ammann")));
  EXPECT_FALSE(is_coprime(loops({2, 2})));
  EXPECT_FALSE(is_coprime(test::line_gifs(2, {{"a", 1, 2, 1}, {"b", 2, 1, 1}})));
  EXPECT_EQ(triangle_property_holds(test::bundled("ammann")), TriangleVerdict::proved_via_coprime);
  EXPECT_EQ(triangle_property_holds(loops({2, 2})), TriangleVerdict::unknown);
  EXPECT_STREQ(to_string(TriangleVerdict::unknown), "unknown");
}

TEST(Analysis, EquivalenceAmmann) {
  const Gifs am = test::bundled("ammann");
  const Digraph& g = am.graph();
  const ThetaParam ones = test::theta(g, {}, {"1"});
  const ThetaParam two_ones = test::theta(g, {"2"}, {"1"});
  const ThetaParam twos = test::theta(g, {}, {"2"});

  const auto self = params_equivalent(g, ones, ones);
  ASSERT_TRUE(self);
  EXPECT_EQ(self->K, 0);
  EXPECT_EQ(self->K_prime, 0);

  const auto w = params_equivalent(g, ones, two_ones);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->K, 2);
  EXPECT_EQ(w->K_prime, 1);
  EXPECT_EQ(w->common_tail, ones);
  EXPECT_NO_THROW(check_witness(g, ones, two_ones, *w));
  EXPECT_EQ(oracle::equivalent(g, ones, two_ones, 10), (std::pair<long long, long long>{2, 1}));

  EXPECT_FALSE(params_equivalent(g, ones, twos));
  EXPECT_FALSE(oracle::equivalent(g, ones, twos, 10));

  EquivalenceWitness wrong = *w;
  wrong.K = 1;
  EXPECT_THROW(check_witness(g, ones, two_ones, wrong), std::invalid_argument);
}

TEST(Analysis, CongruenceAmmann) {
  const Gifs am = test::bundled("ammann");
  const Digraph& g = am.graph();
  const ThetaParam a = test::theta(g, {}, {"1"});
  const ThetaParam b = test::theta(g, {"2"}, {"1"});
  const auto w = params_equivalent(g, a, b);
  ASSERT_TRUE(w);
  const Similarity phi = congruence_isometry(am, a, b, *w);
  EXPECT_NEAR(phi.scale(), 1.0, 1e-9);
  for (int k = 2; k <= 5; ++k) {
    const CongruenceCheck c = congruence_mapping_check(am, a, b, *w, kind::Balanced{}, k);
    EXPECT_TRUE(c.ok()) << "k=" << k << ": " << c.message;
    EXPECT_EQ(c.mismatches, 0u);
  }
  EXPECT_THROW(congruence_mapping_check(am, a, b, *w, kind::Balanced{}, 1), std::invalid_argument);

  const auto id = params_equivalent(g, a, a);
  EXPECT_TRUE(approx_eq(congruence_isometry(am, a, a, *id), Similarity::identity(2), 1e-12));
}

// Random eventually periodic parameters on a small two-vertex graph.
std::vector<ThetaParam> sample_params(const Digraph& g, unsigned seed, int count) {
  std::mt19937 rng(seed);
  std::vector<ThetaParam> out;
  auto walk = [&](Vertex from, int len) {
    // Reversed walk: each step picks an edge whose head is the current vertex.
    std::vector<EdgeIndex> w;
    Vertex at = from;
    for (int i = 0; i < len; ++i) {
      std::vector<EdgeIndex> in;
      for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
        if (g.edge(e).head == at) in.push_back(e);
      }
      const EdgeIndex e = in[std::uniform_int_distribution<std::size_t>(0, in.size() - 1)(rng)];
      w.push_back(e);
      at = g.edge(e).tail;
    }
    return std::make_pair(w, at);
  };
  while (static_cast<int>(out.size()) < count) {
    const auto [prefix, at] = walk(std::uniform_int_distribution<int>(1, 2)(rng), std::uniform_int_distribution<int>(0, 3)(rng));
    auto [cycle, back] = walk(at, std::uniform_int_distribution<int>(1, 3)(rng));
    if (back != at) continue;
    out.emplace_back(g, prefix, cycle);
  }
  return out;
}

TEST(AnalysisProperty, EquivalenceMatchesBruteForceAndIsAnEquivalence) {
  const Digraph g(2, {{"a", 1, 1, 1}, {"b", 1, 2, 2}, {"c", 2, 1, 1}, {"d", 2, 2, 2}});
  const auto params = sample_params(g, 11, 40);
  std::vector<std::vector<bool>> rel(params.size(), std::vector<bool>(params.size()));
  for (std::size_t i = 0; i < params.size(); ++i) {
    for (std::size_t j = 0; j < params.size(); ++j) {
      const auto w = params_equivalent(g, params[i], params[j]);
      const auto o = oracle::equivalent(g, params[i], params[j], 24);
      ASSERT_EQ(w.has_value(), o.has_value()) << i << " " << j;
      rel[i][j] = w.has_value();
      if (!w) continue;
      EXPECT_EQ(std::make_pair(w->K, w->K_prime), *o) << i << " " << j;
      EXPECT_NO_THROW(check_witness(g, params[i], params[j], *w));
    }
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    EXPECT_TRUE(rel[i][i]);
    for (std::size_t j = 0; j < params.size(); ++j) {
      EXPECT_EQ(rel[i][j], rel[j][i]);
      for (std::size_t k = 0; k < params.size(); ++k) {
        if (rel[i][j] && rel[j][k]) {
          EXPECT_TRUE(rel[i][k]) << i << " " << j << " " << k;
        }
      }
    }
  }
}

TEST(AnalysisProperty, IsometryForEveryWitness) {
  const Gifs am = test::bundled("ammann");
  const Digraph& g = am.graph();
  const std::vector<ThetaParam> params = {test::theta(g, {}, {"1"}),           test::theta(g, {"2"}, {"1"}),
                                          test::theta(g, {"1", "2"}, {"1"}),   test::theta(g, {}, {"1", "2"}),
                                          test::theta(g, {"2"}, {"2", "1"}),   test::theta(g, {"1", "1"}, {"1", "2"})};
  for (const auto& a : params) {
    for (const auto& b : params) {
      if (const auto w = params_equivalent(g, a, b)) {
        EXPECT_NEAR(congruence_isometry(am, a, b, *w).scale(), 1.0, 1e-9);
      }
    }
  }
}

TEST(Analysis, SelfSimilarSquare) {
  const Gifs sq = test::bundled("square");
  const SelfSimilarReport r = verify_self_similar(sq, test::theta(sq.graph(), {}, {"1"}), 2);
  EXPECT_DOUBLE_EQ(r.ratio, 2.0);
  ASSERT_FALSE(r.tiles.empty());
  for (const auto& t : r.tiles) {
    EXPECT_EQ(t.verdict, Verdict::pass) << t.message;
    EXPECT_EQ(t.cover_size, 4u);
  }
}

TEST(Analysis, SelfSimilarAmmann) {
  const Gifs am = test::bundled("ammann");
  const double s = *am.scaling_constant();
  const SelfSimilarReport r = verify_self_similar(am, test::theta(am.graph(), {}, {"1", "2"}), 3);
  EXPECT_TRUE(r.all_pass());
  EXPECT_NEAR(r.ratio, std::pow(s, -3), 1e-9);
  EXPECT_GT(r.ratio, 1.0);
  for (const auto& t : r.tiles) EXPECT_LE(t.residual, t.bound);
}

TEST(Analysis, SymmetryScan) {
  const Gifs sq = test::bundled("square");
  const ComponentShapes sq_shapes(sq);
  const SymmetryScan s =
      translation_symmetry_scan(sq, sq_shapes, patch(sq, test::theta(sq.graph(), {}, {"1"}), kind::Uniform{}, 3));
  EXPECT_EQ(s.verdict, Verdict::fail);
  auto has = [&](double x, double y) {
    for (const auto& v : s.survivors) {
      if ((v - Point2(x, y)).norm() < 1e-9) return true;
    }
    return false;
  };
  EXPECT_TRUE(has(1, 0));
  EXPECT_TRUE(has(0, 1));

  const Gifs am = test::bundled("ammann");
  const ComponentShapes am_shapes(am);
  const SymmetryScan a =
      translation_symmetry_scan(am, am_shapes, patch(am, test::theta(am.graph(), {}, {"1"}), kind::Balanced{}, 6));
  EXPECT_EQ(a.verdict, Verdict::pass);
  EXPECT_TRUE(a.survivors.empty());

  const SymmetryScan single =
      translation_symmetry_scan(sq, sq_shapes, patch(sq, test::theta(sq.graph(), {}, {"1"}), kind::Uniform{}, 0));
  EXPECT_EQ(single.verdict, Verdict::inconclusive);
}

TEST(Analysis, Repetitivity) {
  const Gifs am = test::bundled("ammann");
  const ComponentShapes shapes(am);
  const Patch p = patch(am, test::theta(am.graph(), {}, {"1"}), kind::Balanced{}, 6);
  const TileAddress centre = p.tiles[p.tiles.size() / 2].address;
  const RepetitivityResult r = repetitivity_radius(am, shapes, p, centre, 0.0);
  ASSERT_TRUE(r.radius) << r.message;
  EXPECT_EQ(r.motif_tiles, 1u);
  const auto u = patch_union(am, shapes, p.theta, 6);
  const Box b = u->bbox();
  EXPECT_LT(*r.radius, (b.hi - b.lo).norm());

  const RepetitivityResult whole = repetitivity_radius(am, shapes, p, centre, 1e6);
  EXPECT_FALSE(whole.radius);

  const Gifs sq = test::bundled("square");
  const ComponentShapes sq_shapes(sq);
  const Patch grid = patch(sq, test::theta(sq.graph(), {}, {"1", "2", "3", "4"}), kind::Uniform{}, 4);
  const RepetitivityResult rs = repetitivity_radius(sq, sq_shapes, grid, grid.tiles[0].address, 1.0);
  ASSERT_TRUE(rs.radius) << rs.message;
  EXPECT_LE(*rs.radius, 2 * rs.motif_extent + 2);
}

TEST(Analysis, Filling) {
  const Gifs sq = test::bundled("square");
  const ComponentShapes shapes(sq);
  const FillingResult spiral = filling_heuristic(sq, shapes, test::theta(sq.graph(), {}, {"1", "2", "3", "4"}), 3);
  EXPECT_TRUE(spiral.covered);
  const FillingResult corner = filling_heuristic(sq, shapes, test::theta(sq.graph(), {}, {"1"}), 3, 16);
  EXPECT_FALSE(corner.covered);
  EXPECT_EQ(corner.inner_radius, 0.0);

  const Gifs am = test::bundled("ammann");
  const ComponentShapes am_shapes(am);
  EXPECT_TRUE(filling_heuristic(am, am_shapes, test::theta(am.graph(), {}, {"1"}), 0.001, 10).covered);
  const Gifs ch = test::bundled("chair");
  const ComponentShapes ch_shapes(ch);
  EXPECT_TRUE(filling_heuristic(ch, ch_shapes, test::theta(ch.graph(), {}, {"1", "2"}), 0.001, 10).covered);
}

TEST(Analysis, Disjunctive) {
  const Gifs am = test::bundled("ammann");
  const Digraph& g = am.graph();
  EXPECT_TRUE(is_disjunctive_prefix(g, test::theta(g, {}, {"1", "2"}), 1).empty());
  const auto missing = is_disjunctive_prefix(g, test::theta(g, {}, {"1"}), 1);
  ASSERT_EQ(missing.size(), 1u);
  EXPECT_EQ(missing[0].edges, (std::vector<EdgeIndex>{1}));

  // Every length-2 word over the four square loops occurs in this cycle.
  const Gifs sq = test::bundled("square");
  const ThetaParam db =
      test::theta(sq.graph(), {}, {"1", "1", "2", "1", "3", "1", "4", "2", "2", "3", "2", "4", "3", "3", "4", "4"});
  EXPECT_TRUE(is_disjunctive_prefix(sq.graph(), db, 2).empty());
  EXPECT_FALSE(is_disjunctive_prefix(sq.graph(), db, 3).empty());
}

TEST(Analysis, ReportJson) {
  Report r("coprime");
  r.verdict = Verdict::pass;
  r.diagnostics.push_back("ok");
  const auto j = to_json(r);
  EXPECT_EQ(j["check"], "coprime");
  EXPECT_EQ(j["verdict"], "pass");
  EXPECT_FALSE(j.contains("witness"));
  r.witness = {{"period", 1}};
  EXPECT_EQ(to_json(r)["witness"]["period"], 1);
}

// Random strongly connected graphs; the exhaustive sweep lives in the
// acceptance binary.
TEST(AnalysisProperty, CoprimeMatchesClosedWalkGcd) {
  std::mt19937 rng(5);
  int tested = 0;
  while (tested < 60) {
    const int n = std::uniform_int_distribution<int>(1, 3)(rng);
    const int m = std::uniform_int_distribution<int>(1, 5)(rng);
    std::vector<Edge> edges;
    for (int i = 0; i < m; ++i) {
      edges.push_back({std::to_string(i), std::uniform_int_distribution<int>(1, n)(rng),
                       std::uniform_int_distribution<int>(1, n)(rng), std::uniform_int_distribution<int>(1, 3)(rng)});
    }
    const Gifs gifs = test::line_gifs(n, edges);
    if (!is_strongly_connected(gifs.graph())) continue;
    ++tested;
    EXPECT_EQ(is_coprime(gifs), oracle::closed_walk_gcd(gifs.graph(), 8) == 1);
  }
}

}  // namespace
}  // namespace gifstile
