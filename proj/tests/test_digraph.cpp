#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <stdexcept>

#include "gifstile/digraph.hpp"
#include "oracles/oracle.hpp"
#include "support.hpp"

namespace gifstile {
namespace {

Digraph ammann_graph() { return Digraph(1, {{"1", 1, 1, 1}, {"2", 1, 1, 2}}); }

TEST(Digraph, RejectsBadEdges) {
  EXPECT_THROW(Digraph(1, {{"a", 1, 1, 1}, {"a", 1, 1, 1}}), std::invalid_argument);
  EXPECT_THROW(Digraph(1, {{"a", 1, 2, 1}}), std::invalid_argument);
  EXPECT_THROW(Digraph(1, {{"a", 0, 1, 1}}), std::invalid_argument);
  EXPECT_THROW(Digraph(1, {{"a", 1, 1, 0}}), std::invalid_argument);
}

TEST(Digraph, EdgesSortedById) {
  Digraph g(2, {{"b", 2, 1, 1}, {"a", 1, 2, 3}});
  EXPECT_EQ(g.edge(0).id, "a");
  EXPECT_EQ(g.edge(1).id, "b");
  EXPECT_EQ(g.edge_index("b"), 1u);
  EXPECT_FALSE(g.find_edge("c"));
  EXPECT_THROW(g.edge_index("c"), std::invalid_argument);
  EXPECT_EQ(g.max_weight(), 3);
  ASSERT_EQ(g.out_edges(1).size(), 1u);
  EXPECT_EQ(g.out_edges(1)[0], 0u);
}

TEST(Digraph, SignatureTracksContent) {
  EXPECT_EQ(ammann_graph().signature(), ammann_graph().signature());
  Digraph other(1, {{"1", 1, 1, 1}, {"2", 1, 1, 3}});
  EXPECT_NE(ammann_graph().signature(), other.signature());
}

TEST(Digraph, StrongConnectivity) {
  EXPECT_TRUE(is_strongly_connected(Digraph(1, {{"a", 1, 1, 1}})));
  EXPECT_FALSE(is_strongly_connected(Digraph(2, {{"a", 1, 2, 1}})));
  EXPECT_TRUE(is_strongly_connected(Digraph(2, {{"a", 1, 2, 1}, {"b", 2, 1, 1}})));
}

TEST(Digraph, DValue) {
  const Digraph g = ammann_graph();
  EXPECT_EQ(d_value(g, Path{1, {}}), 0);
  EXPECT_EQ(d_value(g, test::path(g, 1, {"1", "2"})), 3);
  EXPECT_EQ(d_value(g, test::path(g, 1, {"2", "2"})), 4);

  Digraph two(2, {{"a", 1, 2, 1}, {"b", 2, 1, 1}});
  EXPECT_THROW(d_value(two, test::path(two, 1, {"a", "a"})), std::invalid_argument);
  EXPECT_FALSE(is_valid_path(two, test::path(two, 1, {"a", "a"})));
  EXPECT_TRUE(is_valid_reversed_path(two, test::path(two, 2, {"a", "b"})));
}

TEST(Digraph, ConcatAndEndVertex) {
  Digraph g(2, {{"a", 1, 2, 1}, {"b", 2, 1, 1}});
  const Path p = test::path(g, 1, {"a"});
  const Path q = test::path(g, 2, {"b"});
  EXPECT_EQ(end_vertex(g, p), 2);
  EXPECT_EQ(concat(g, p, q), test::path(g, 1, {"a", "b"}));
  EXPECT_THROW(concat(g, p, p), std::invalid_argument);
  EXPECT_EQ(format_path(g, concat(g, p, q)), "a.b");
  EXPECT_EQ(format_path(g, Path{2, {}}), "<2>");
}

TEST(Digraph, EnumeratePathsAmmann) {
  const Digraph g = ammann_graph();
  const auto paths = enumerate_paths(g, 1, 2);
  std::set<Path> got(paths.begin(), paths.end());
  const std::set<Path> want = {Path{1, {}}, test::path(g, 1, {"1"}), test::path(g, 1, {"2"}),
                               test::path(g, 1, {"1", "1"})};
  EXPECT_EQ(got, want);
  EXPECT_EQ(paths.size(), 4u);
  EXPECT_EQ(enumerate_paths(g, 1, 0).size(), 1u);
}

TEST(Digraph, EnumeratePathsSquare) {
  Digraph g(1, {{"1", 1, 1, 1}, {"2", 1, 1, 1}, {"3", 1, 1, 1}, {"4", 1, 1, 1}});
  EXPECT_EQ(enumerate_paths(g, 1, 1).size(), 5u);
}

TEST(Digraph, EnumerationMatchesOracle) {
  Digraph g(3, {{"a", 1, 2, 1}, {"b", 2, 3, 2}, {"c", 3, 1, 1}, {"d", 2, 1, 3}, {"e", 1, 1, 2}});
  for (int dmax = 0; dmax <= 7; ++dmax) {
    for (Vertex v = 1; v <= 3; ++v) {
      std::set<std::vector<EdgeIndex>> got;
      for (const Path& p : enumerate_paths(g, v, dmax)) got.insert(p.edges);
      const auto words = oracle::all_words(g, v, dmax);
      const std::set<std::vector<EdgeIndex>> want(words.begin(), words.end());
      EXPECT_EQ(got, want) << "v=" << v << " dmax=" << dmax;
    }
  }
}

TEST(Digraph, WalkPathsPrune) {
  const Digraph g = ammann_graph();
  int seen = 0;
  walk_paths(g, 1, 10, [&](const Path& p, int) {
    ++seen;
    return p.empty() ? Visit::descend : Visit::prune;
  });
  EXPECT_EQ(seen, 3);
}

TEST(Digraph, WeightedPeriod) {
  EXPECT_EQ(weighted_period(ammann_graph()), 1);
  EXPECT_EQ(weighted_period(Digraph(1, {{"a", 1, 1, 2}, {"b", 1, 1, 4}})), 2);
  // Frozen from the closed-walk oracle.
  Digraph two(2, {{"a", 1, 2, 1}, {"b", 2, 1, 1}});
  EXPECT_EQ(oracle::closed_walk_gcd(two, 6), 2);
  EXPECT_EQ(weighted_period(two), 2);
  EXPECT_THROW(weighted_period(Digraph(2, {{"a", 1, 2, 1}})), std::invalid_argument);
}

TEST(Digraph, CanonicalOrder) {
  const Digraph g = ammann_graph();
  const Path a = test::path(g, 1, {"2"});
  const Path b = test::path(g, 1, {"1", "1"});
  EXPECT_TRUE(canonical_less(a, b));
  EXPECT_FALSE(canonical_less(b, a));
  EXPECT_TRUE(canonical_less(test::path(g, 1, {"1"}), a));
}

}  // namespace
}  // namespace gifstile
