#include "gifstile/io.hpp"

#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <stdexcept>

namespace gifstile {

namespace bundled {
extern const std::string_view square_json;
extern const std::string_view ammann_json;
extern const std::string_view chair_json;
}  // namespace bundled

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument(what); }

const json& field(const json& j, const char* name, const std::string& where) {
  if (!j.is_object() || !j.contains(name)) bad(fmt::format("{}: missing field '{}'", where, name));
  return j.at(name);
}

Vec vec_from(const json& j, int dim, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) bad(fmt::format("{}: expected {} numbers", where, dim));
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v[i] = j.at(static_cast<std::size_t>(i)).get<double>();
  return v;
}

// Row-major, either flat or nested.
Mat mat_from(const json& j, int dim, const std::string& where) {
  Mat m(dim, dim);
  if (j.is_array() && static_cast<int>(j.size()) == dim * dim && !j.front().is_array()) {
    for (int i = 0; i < dim * dim; ++i) m(i / dim, i % dim) = j.at(static_cast<std::size_t>(i)).get<double>();
    return m;
  }
  if (!j.is_array() || static_cast<int>(j.size()) != dim) bad(where + ": ortho must be a dim x dim matrix");
  for (int r = 0; r < dim; ++r) {
    const Vec row = vec_from(j.at(static_cast<std::size_t>(r)), dim, where);
    for (int c = 0; c < dim; ++c) m(r, c) = row[c];
  }
  return m;
}

Similarity map_from(const json& j, int dim, int d, std::optional<double> s, const std::string& where) {
  const Vec shift = vec_from(field(j, "shift", where), dim, where + ".shift");
  std::optional<double> scale;
  if (j.contains("scale")) scale = j.at("scale").get<double>();
  if (s) {
    const double expected = std::pow(*s, d);
    if (scale && std::abs(*scale - expected) > 1e-9) {
      bad(fmt::format("{}: scale {} disagrees with s^d = {}", where, *scale, expected));
    }
    if (!scale) scale = expected;
  }
  if (!scale) bad(where + ": map needs a scale or a scaling_constant");

  Mat ortho = Mat::Identity(dim, dim);
  if (j.contains("ortho")) {
    ortho = mat_from(j.at("ortho"), dim, where + ".ortho");
  } else if (dim == 2) {
    ortho = Similarity::planar(1.0, j.value("angle_degrees", 0.0), j.value("reflect", false), 0, 0).ortho();
  } else if (j.value("reflect", false)) {
    ortho(0, 0) = -1;
  }
  if (j.contains("angle_degrees") && dim != 2) bad(where + ": angle_degrees only applies in dimension 2");
  try {
    return Similarity(*scale, ortho, shift);
  } catch (const std::invalid_argument& e) {
    bad(where + ": " + e.what());
  }
}

std::vector<EdgeIndex> edge_list(const Digraph& g, const json& j, const char* name) {
  const json& arr = field(j, name, "theta");
  if (!arr.is_array()) bad(fmt::format("theta.{} must be an array of edge ids", name));
  std::vector<EdgeIndex> out;
  for (const json& id : arr) {
    out.push_back(g.edge_index(id.is_string() ? id.get<std::string>() : id.dump()));
  }
  return out;
}

ojson ids(const Digraph& g, const std::vector<EdgeIndex>& edges) {
  ojson arr = ojson::array();
  for (EdgeIndex e : edges) arr.push_back(g.edge(e).id);
  return arr;
}

}  // namespace

Gifs gifs_from_json(const json& j) {
  try {
    const int dim = field(j, "dim", "gifs").get<int>();
    if (dim < 1 || dim > 3) bad("gifs: dim must be 1, 2 or 3");
    const int n = field(j, "vertices", "gifs").get<int>();
    std::optional<double> s;
    if (j.contains("scaling_constant") && !j.at("scaling_constant").is_null()) s = j.at("scaling_constant").get<double>();
    Rigidity rigid = Rigidity::unknown;
    if (j.contains("rigid") && !j.at("rigid").is_null()) rigid = j.at("rigid").get<bool>() ? Rigidity::rigid : Rigidity::non_rigid;

    const json& edges = field(j, "edges", "gifs");
    if (!edges.is_array()) bad("gifs: edges must be an array");
    std::vector<Edge> list;
    for (const json& e : edges) {
      const json& id = field(e, "id", "edge");
      list.push_back(Edge{id.is_string() ? id.get<std::string>() : id.dump(), field(e, "tail", "edge").get<int>(),
                          field(e, "head", "edge").get<int>(), e.value("d", 1)});
    }
    Digraph g(n, list);
    // Maps follow the graph's id-sorted edge order.
    std::vector<std::optional<Similarity>> slots(g.edge_count());
    for (std::size_t i = 0; i < list.size(); ++i) {
      const EdgeIndex idx = g.edge_index(list[i].id);
      const std::string where = "edge " + list[i].id;
      slots[idx] = map_from(field(edges.at(i), "map", where), dim, list[i].weight, s, where + ".map");
    }
    std::vector<Similarity> maps;
    for (auto& m : slots) maps.push_back(*m);
    Gifs gifs(std::move(g), std::move(maps), s, rigid);

    if (j.contains("hull_hints")) {
      for (const auto& [key, poly] : j.at("hull_hints").items()) {
        const int v = std::stoi(key);
        if (v < 1 || v > n) bad("hull_hints: unknown vertex " + key);
        if (dim != 2) bad("hull_hints need dimension 2");
        Polygon p;
        for (const json& pt : poly) {
          const Vec x = vec_from(pt, 2, "hull_hints." + key);
          p.emplace_back(x[0], x[1]);
        }
        if (p.size() < 3) bad("hull_hints." + key + ": polygon needs 3 vertices");
        gifs.set_hull_hint(v, std::move(p));
      }
    }
    return gifs;
  } catch (const json::exception& e) {
    bad(std::string("gifs: ") + e.what());
  }
}

ojson similarity_to_json(const Similarity& f) {
  ojson j;
  j["scale"] = f.scale();
  ojson ortho = ojson::array();
  for (int r = 0; r < f.dim(); ++r) {
    for (int c = 0; c < f.dim(); ++c) ortho.push_back(f.ortho()(r, c));
  }
  j["ortho"] = ortho;
  ojson shift = ojson::array();
  for (int i = 0; i < f.dim(); ++i) shift.push_back(f.shift()[i]);
  j["shift"] = shift;
  return j;
}

Similarity similarity_from_json(const json& j) {
  try {
    const json& shift = field(j, "shift", "transform");
    const int dim = static_cast<int>(shift.size());
    return Similarity(field(j, "scale", "transform").get<double>(), mat_from(field(j, "ortho", "transform"), dim, "transform"),
                      vec_from(shift, dim, "transform.shift"));
  } catch (const json::exception& e) {
    bad(std::string("transform: ") + e.what());
  }
}

ojson gifs_to_json(const Gifs& gifs) {
  const Digraph& g = gifs.graph();
  ojson j;
  j["dim"] = gifs.dim();
  if (gifs.scaling_constant()) j["scaling_constant"] = *gifs.scaling_constant();
  if (gifs.rigidity() != Rigidity::unknown) j["rigid"] = gifs.rigidity() == Rigidity::rigid;
  j["vertices"] = gifs.vertex_count();
  ojson edges = ojson::array();
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edge(e);
    ojson je;
    je["id"] = edge.id;
    je["tail"] = edge.tail;
    je["head"] = edge.head;
    je["d"] = edge.weight;
    je["map"] = similarity_to_json(gifs.map(e));
    edges.push_back(je);
  }
  j["edges"] = edges;
  ojson hints = ojson::object();
  for (Vertex v = 1; v <= gifs.vertex_count(); ++v) {
    if (!gifs.hull_hint(v)) continue;
    ojson poly = ojson::array();
    for (const Point2& p : *gifs.hull_hint(v)) poly.push_back({p.x(), p.y()});
    hints[std::to_string(v)] = poly;
  }
  if (!hints.empty()) j["hull_hints"] = hints;
  return j;
}

ThetaParam theta_from_json(const Digraph& g, const json& j) {
  try {
    return ThetaParam(g, edge_list(g, j, "prefix"), edge_list(g, j, "cycle"));
  } catch (const json::exception& e) {
    bad(std::string("theta: ") + e.what());
  }
}

ojson theta_to_json(const Digraph& g, const ThetaParam& theta) {
  ojson j;
  j["prefix"] = ids(g, theta.prefix());
  j["cycle"] = ids(g, theta.cycle());
  return j;
}

ojson patch_to_json(const Gifs& gifs, const Patch& p) {
  const Digraph& g = gifs.graph();
  ojson j;
  j["theta"] = theta_to_json(g, p.theta);
  j["kind"] = to_string(p.kind);
  j["k"] = p.level_k;
  ojson tiles = ojson::array();
  for (const Tile& t : p.tiles) {
    ojson jt;
    jt["address"] = {{"k", t.address.k}, {"sigma", ids(g, t.address.sigma.edges)}};
    jt["component"] = t.component;
    if (t.scale_exponent) jt["scale_exponent"] = *t.scale_exponent;
    jt["transform"] = similarity_to_json(t.transform);
    tiles.push_back(jt);
  }
  j["tiles"] = tiles;
  return j;
}

Patch patch_from_json(const Gifs& gifs, const json& j) {
  try {
    const Digraph& g = gifs.graph();
    Patch p{theta_from_json(g, field(j, "theta", "patch")), parse_kind(field(j, "kind", "patch").get<std::string>()),
            field(j, "k", "patch").get<int>(), {}};
    for (const json& jt : field(j, "tiles", "patch")) {
      const json& a = field(jt, "address", "tile");
      const int k = field(a, "k", "tile.address").get<int>();
      if (k < 0) bad("tile level must be non-negative");
      Path sigma{p.theta.vertex(static_cast<std::size_t>(k)), {}};
      for (const json& id : field(a, "sigma", "tile.address")) sigma.edges.push_back(g.edge_index(id.get<std::string>()));
      Tile t{{k, sigma}, similarity_from_json(field(jt, "transform", "tile")), field(jt, "component", "tile").get<int>(),
             std::nullopt};
      if (jt.contains("scale_exponent")) t.scale_exponent = jt.at("scale_exponent").get<long long>();
      p.tiles.push_back(std::move(t));
    }
    return p;
  } catch (const json::exception& e) {
    bad(std::string("patch: ") + e.what());
  }
}

std::vector<std::string> bundled_names() { return {"ammann", "chair", "square"}; }

std::string_view bundled_gifs_text(std::string_view name) {
  if (name == "square") return bundled::square_json;
  if (name == "ammann") return bundled::ammann_json;
  if (name == "chair") return bundled::chair_json;
  bad(fmt::format("unknown bundled GIFS '{}' (have ammann, chair, square)", name));
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    bad(path + ": " + e.what());
  }
}

Gifs load_gifs(const std::string& source) {
  constexpr std::string_view prefix = "builtin:";
  if (source.rfind(prefix, 0) == 0) {
    return gifs_from_json(json::parse(bundled_gifs_text(std::string_view(source).substr(prefix.size()))));
  }
  return gifs_from_json(read_json_file(source));
}

ThetaParam load_theta(const Digraph& g, const std::string& path) { return theta_from_json(g, read_json_file(path)); }

}  // namespace gifstile
