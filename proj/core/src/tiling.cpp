#include "gifstile/tiling.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <set>
#include <stdexcept>

namespace gifstile {

namespace {

std::string format_address(const TileAddress& a) {
  std::string s;
  for (EdgeIndex e : a.sigma.edges) s += fmt::format("{}{}", s.empty() ? "" : ",", e);
  return fmt::format("{}.[{}]", a.k, s);
}

long long exponent_of(const Gifs& gifs, const ThetaParam& theta, const TileAddress& a) {
  return d_value(gifs.graph(), a.sigma) - theta.d_prefix(static_cast<std::size_t>(a.k));
}

}  // namespace

const Tile* Patch::find(const TileAddress& a) const {
  auto it = std::lower_bound(tiles.begin(), tiles.end(), a,
                             [](const Tile& t, const TileAddress& key) { return t.address < key; });
  if (it == tiles.end() || !(it->address == a)) return nullptr;
  return &*it;
}

TileAddress canonical_address(const ThetaParam& theta, int k, const Path& sigma) {
  if (k < 0) throw std::invalid_argument("tile level must be non-negative");
  TileAddress a{k, sigma};
  if (sigma.start != theta.vertex(static_cast<std::size_t>(k))) {
    throw std::invalid_argument("tile path must start at v_k");
  }
  std::size_t drop = 0;
  while (a.k > 0 && drop < sigma.edges.size() && sigma.edges[drop] == theta.edge(static_cast<std::size_t>(a.k))) {
    ++drop;
    --a.k;
  }
  if (drop > 0) {
    a.sigma.edges.erase(a.sigma.edges.begin(), a.sigma.edges.begin() + static_cast<std::ptrdiff_t>(drop));
    a.sigma.start = theta.vertex(static_cast<std::size_t>(a.k));
  }
  return a;
}

Similarity tile_transform(const Gifs& gifs, const ThetaParam& theta, const TileAddress& a) {
  const Similarity expand = map_for_path(gifs, theta.head_path(static_cast<std::size_t>(a.k)), true);
  return compose(expand, map_for_path(gifs, a.sigma, false));
}

Tile make_tile(const Gifs& gifs, const ThetaParam& theta, int k, const Path& sigma) {
  const TileAddress a = canonical_address(theta, k, sigma);
  Tile t{a, tile_transform(gifs, theta, a), end_vertex(gifs.graph(), a.sigma), std::nullopt};
  if (gifs.balanced_capable()) t.scale_exponent = exponent_of(gifs, theta, a);
  return t;
}

Patch patch(const Gifs& gifs, const ThetaParam& theta, const SequenceKind& kind, int k) {
  const PreTree s = generate(gifs, theta, kind, k);
  Patch out{theta, kind, k, {}};
  out.tiles.reserve(s.paths.size());
  for (const Path& sigma : s.paths) out.tiles.push_back(make_tile(gifs, theta, k, sigma));
  std::sort(out.tiles.begin(), out.tiles.end(), [](const Tile& a, const Tile& b) { return a.address < b.address; });
  return out;
}

NestingCheck patch_nesting_check(const Patch& small, const Patch& big, double tol) {
  if (!(small.theta == big.theta) || !(small.kind == big.kind) || big.level_k != small.level_k + 1) {
    throw std::invalid_argument("nesting check needs the same theta and kind at consecutive levels");
  }
  for (const Tile& t : small.tiles) {
    const Tile* match = big.find(t.address);
    if (match == nullptr) {
      return {false, t.address, "tile " + format_address(t.address) + " missing from the deeper patch"};
    }
    if (!approx_eq(t.transform, match->transform, tol)) {
      return {false, t.address, "tile " + format_address(t.address) + " placed differently in the deeper patch"};
    }
  }
  return {};
}

std::vector<Tile> basic_subdivision(const Gifs& gifs, Vertex i, int j) {
  gifs.require_balanced("basic subdivision");
  if (j < 0) throw std::invalid_argument("subdivision scale index j must be non-negative");
  const double s = *gifs.scaling_constant();
  const Similarity scaling(std::pow(s, j), Mat::Identity(gifs.dim(), gifs.dim()), Vec::Zero(gifs.dim()));
  std::vector<Tile> out;
  for (EdgeIndex e : gifs.graph().out_edges(i)) {
    const Edge& edge = gifs.graph().edge(e);
    out.push_back(Tile{{0, Path{i, {e}}}, compose(scaling, gifs.map(e)), edge.head, edge.weight + j});
  }
  return out;
}

SubdivisionReport find_basic_subdivisions(const Gifs& gifs, const Patch& fine, const Patch& coarse, double tol) {
  if (!(fine.theta == coarse.theta) || fine.level_k != coarse.level_k) {
    throw std::invalid_argument("basic subdivision matching needs the same theta and k");
  }
  const Digraph& g = gifs.graph();
  SubdivisionReport report;
  std::set<TileAddress> used;
  for (const Tile& t : coarse.tiles) {
    if (fine.find(t.address) != nullptr) {
      ++report.present;
      used.insert(t.address);
      continue;
    }
    bool complete = true;
    std::vector<TileAddress> group;
    for (EdgeIndex e : g.out_edges(t.component)) {
      Path child = t.address.sigma;
      child.edges.push_back(e);
      const TileAddress a = canonical_address(fine.theta, t.address.k, child);
      const Tile* match = fine.find(a);
      if (match == nullptr || !approx_eq(match->transform, compose(t.transform, gifs.map(e)), tol)) {
        complete = false;
        break;
      }
      group.push_back(a);
    }
    if (!complete) {
      report.unclassified.push_back(t.address);
      continue;
    }
    ++report.subdivided;
    report.group_sizes.push_back(group.size());
    used.insert(group.begin(), group.end());
  }
  report.low_tiles_covered = used.size() == fine.tiles.size();
  return report;
}

Patch shift_W(const Gifs& gifs, const ThetaParam& theta, int k) {
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  const ThetaParam next = theta.shifted();
  // The result is the balanced patch of w(theta) one level down.
  Patch out{next, kind::Balanced{}, std::max(k - 1, 0), {}};
  const PreTree s = seq_hierarchy(gifs, theta, 1, k, HierarchyForm::s_form);
  const Similarity f1 = gifs.map(theta.edge(1));
  for (const Path& sigma : s.paths) {
    const Tile original = make_tile(gifs, theta, k, sigma);
    // (k, sigma) w.r.t. theta is (k - 1, sigma) w.r.t. w(theta); at k = 0 the
    // edge theta_1 is prepended instead.
    TileAddress moved = original.address;
    if (moved.k > 0) {
      --moved.k;
    } else {
      moved.sigma.edges.insert(moved.sigma.edges.begin(), theta.edge(1));
      moved.sigma.start = next.vertex(0);
    }
    moved = canonical_address(next, moved.k, moved.sigma);
    Tile t{moved, compose(f1, original.transform), original.component, std::nullopt};
    if (gifs.balanced_capable()) t.scale_exponent = exponent_of(gifs, next, moved);
    out.tiles.push_back(std::move(t));
  }
  std::sort(out.tiles.begin(), out.tiles.end(), [](const Tile& a, const Tile& b) { return a.address < b.address; });
  return out;
}

std::optional<TileMismatch> compare_patches(const Patch& a, const Patch& b, double tol) {
  for (const Tile& t : a.tiles) {
    const Tile* m = b.find(t.address);
    if (m == nullptr) return TileMismatch{t.address, "tile " + format_address(t.address) + " only in first patch"};
    if (!approx_eq(t.transform, m->transform, tol)) {
      return TileMismatch{t.address, "tile " + format_address(t.address) + " has different transforms"};
    }
  }
  for (const Tile& t : b.tiles) {
    if (a.find(t.address) == nullptr) {
      return TileMismatch{t.address, "tile " + format_address(t.address) + " only in second patch"};
    }
  }
  return std::nullopt;
}

Census congruence_census(const Gifs& gifs, const Patch& p, double tol) {
  if (p.tiles.empty()) throw std::invalid_argument("census of an empty patch");
  Census out;
  out.scale_bound = gifs.graph().max_weight();
  out.class_bound = static_cast<long long>(gifs.vertex_count()) * out.scale_bound;
  std::vector<double> scales;
  for (const Tile& t : p.tiles) {
    auto same = [&](const CensusClass& c) {
      if (c.component != t.component) return false;
      if (t.scale_exponent && c.scale_exponent) return *t.scale_exponent == *c.scale_exponent;
      return std::abs(c.scale - t.transform.scale()) <= tol * c.scale;
    };
    auto it = std::find_if(out.classes.begin(), out.classes.end(), same);
    if (it == out.classes.end()) {
      out.classes.push_back({t.component, t.scale_exponent, t.transform.scale(), 1, t.address});
    } else {
      ++it->count;
    }
    const double sc = t.transform.scale();
    if (std::none_of(scales.begin(), scales.end(), [&](double x) { return std::abs(x - sc) <= tol * x; })) {
      scales.push_back(sc);
    }
  }
  out.distinct_scales = scales.size();
  std::sort(out.classes.begin(), out.classes.end(), [](const CensusClass& a, const CensusClass& b) {
    if (a.scale_exponent != b.scale_exponent) return a.scale_exponent < b.scale_exponent;
    if (a.scale != b.scale) return a.scale > b.scale;
    return a.component < b.component;
  });
  return out;
}

}  // namespace gifstile
