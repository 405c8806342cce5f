#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "gifstile/gifs.hpp"
#include "gifstile/io.hpp"
#include "gifstile/theta.hpp"

namespace gifstile::test {

inline std::string data_path(const std::string& rel) { return std::string(GIFSTILE_DATA_DIR) + "/" + rel; }

inline Gifs bundled(const std::string& name) { return load_gifs("builtin:" + name); }

inline std::vector<EdgeIndex> edges(const Digraph& g, const std::vector<std::string>& ids) {
  std::vector<EdgeIndex> out;
  for (const auto& id : ids) out.push_back(g.edge_index(id));
  return out;
}

inline ThetaParam theta(const Digraph& g, const std::vector<std::string>& prefix, const std::vector<std::string>& cycle) {
  return ThetaParam(g, edges(g, prefix), edges(g, cycle));
}

inline Path path(const Digraph& g, Vertex start, const std::vector<std::string>& ids) { return Path{start, edges(g, ids)}; }

// One-dimensional GIFS on the given graph: f_e(x) = s^d(e) x + offset, with
// offsets spread so that nothing coincides. Enough for the combinatorial
// operations, which never look at geometry.
inline Gifs line_gifs(int n, const std::vector<Edge>& list, double s = 0.5) {
  Digraph g(n, list);
  std::vector<Similarity> maps;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    Vec shift(1);
    shift[0] = static_cast<double>(e);
    maps.emplace_back(std::pow(s, g.edge(e).weight), Mat::Identity(1, 1), shift);
  }
  return Gifs(std::move(g), std::move(maps), s);
}

}  // namespace gifstile::test
