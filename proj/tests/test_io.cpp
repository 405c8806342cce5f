#include <gtest/gtest.h>

#include <stdexcept>

#include "gifstile/io.hpp"
#include "support.hpp"

namespace gifstile {
namespace {

using nlohmann::json;

json square_spec() {
  return json::parse(R"({
    "dim": 2, "scaling_constant": 0.5, "vertices": 1,
    "edges": [
      {"id": "1", "tail": 1, "head": 1, "d": 1, "map": {"shift": [0, 0]}},
      {"id": "2", "tail": 1, "head": 1, "d": 1, "map": {"scale": 0.5, "shift": [0.5, 0]}},
      {"id": "3", "tail": 1, "head": 1, "d": 1, "map": {"ortho": [[1, 0], [0, 1]], "shift": [0.5, 0.5]}},
      {"id": "4", "tail": 1, "head": 1, "d": 1, "map": {"angle_degrees": 0, "shift": [0, 0.5]}}
    ]})");
}

TEST(Io, ParsesMapForms) {
  const Gifs g = gifs_from_json(square_spec());
  EXPECT_EQ(g.graph().edge_count(), 4u);
  for (const auto& f : g.maps()) EXPECT_DOUBLE_EQ(f.scale(), 0.5);
  EXPECT_TRUE(g.balanced_capable());
  EXPECT_TRUE(approx_eq(g.map(2), Similarity(0.5, Mat::Identity(2, 2), vec2(0.5, 0.5)), 0));
}

TEST(Io, RejectsBadSpecs) {
  json j = square_spec();
  j["edges"][0]["head"] = 5;
  EXPECT_THROW(gifs_from_json(j), std::invalid_argument);
  j = square_spec();
  j["edges"][1]["map"]["scale"] = 0.4;
  EXPECT_THROW(gifs_from_json(j), std::invalid_argument);
  j = square_spec();
  j["edges"][0]["map"]["shift"] = json::array({0});
  EXPECT_THROW(gifs_from_json(j), std::invalid_argument);
  j = square_spec();
  j.erase("edges");
  EXPECT_THROW(gifs_from_json(j), std::invalid_argument);
  EXPECT_THROW(gifs_from_json(json::parse("[1, 2]")), std::invalid_argument);
}

TEST(Io, GifsRoundTrip) {
  for (const auto& name : bundled_names()) {
    const Gifs g = test::bundled(name);
    const auto j = gifs_to_json(g);
    const Gifs back = gifs_from_json(json::parse(j.dump()));
    ASSERT_EQ(back.graph().edge_count(), g.graph().edge_count());
    for (EdgeIndex e = 0; e < g.graph().edge_count(); ++e) {
      EXPECT_TRUE(approx_eq(back.map(e), g.map(e), 0)) << name;
      EXPECT_EQ(back.graph().edge(e).id, g.graph().edge(e).id);
      EXPECT_EQ(back.graph().edge(e).weight, g.graph().edge(e).weight);
    }
    EXPECT_EQ(back.scaling_constant(), g.scaling_constant());
    EXPECT_EQ(back.rigidity(), g.rigidity());
    EXPECT_EQ(back.hull_hint(1), g.hull_hint(1));
    EXPECT_EQ(gifs_to_json(back).dump(), j.dump());
  }
}

TEST(Io, BundledMatchesDataFiles) {
  for (const auto& name : bundled_names()) {
    const Gifs a = test::bundled(name);
    const Gifs b = load_gifs(test::data_path("gifs/" + name + ".json"));
    EXPECT_EQ(gifs_to_json(a).dump(), gifs_to_json(b).dump()) << name;
  }
  EXPECT_THROW(bundled_gifs_text("penrose"), std::invalid_argument);
  EXPECT_THROW(load_gifs("/nonexistent/file.json"), std::invalid_argument);
}

TEST(Io, ThetaRoundTrip) {
  const Gifs am = test::bundled("ammann");
  const ThetaParam t = load_theta(am.graph(), test::data_path("theta/ammann_2_1.json"));
  EXPECT_EQ(t, test::theta(am.graph(), {"2"}, {"1"}));
  EXPECT_EQ(theta_from_json(am.graph(), json::parse(theta_to_json(am.graph(), t).dump())), t);
  EXPECT_THROW(theta_from_json(am.graph(), json::parse(R"({"prefix": [], "cycle": ["9"]})")), std::invalid_argument);
  EXPECT_THROW(theta_from_json(am.graph(), json::parse(R"({"prefix": []})")), std::invalid_argument);
}

TEST(Io, SimilarityRoundTrip) {
  const Similarity f = Similarity::planar(0.3, 33, true, 1.25, -7);
  const Similarity back = similarity_from_json(json::parse(similarity_to_json(f).dump()));
  EXPECT_TRUE(approx_eq(f, back, 0));
}

TEST(Io, PatchRoundTrip) {
  const Gifs am = test::bundled("ammann");
  const ThetaParam t = test::theta(am.graph(), {}, {"1", "2"});
  const Patch p = patch(am, t, kind::Balanced{}, 4);
  const auto j = patch_to_json(am, p);
  const Patch back = patch_from_json(am, json::parse(j.dump()));
  EXPECT_EQ(back.theta, p.theta);
  EXPECT_EQ(back.kind, p.kind);
  EXPECT_EQ(back.level_k, p.level_k);
  ASSERT_EQ(back.tiles.size(), p.tiles.size());
  for (std::size_t i = 0; i < p.tiles.size(); ++i) {
    EXPECT_EQ(back.tiles[i].address, p.tiles[i].address);
    EXPECT_TRUE(approx_eq(back.tiles[i].transform, p.tiles[i].transform, 0));
    EXPECT_EQ(back.tiles[i].component, p.tiles[i].component);
    EXPECT_EQ(back.tiles[i].scale_exponent, p.tiles[i].scale_exponent);
  }
  EXPECT_EQ(patch_to_json(am, back).dump(), j.dump());
}

}  // namespace
}  // namespace gifstile
