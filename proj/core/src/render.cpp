#include "gifstile/render.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <map>
#include <stdexcept>

namespace gifstile {

namespace {

struct Bounds {
  bool empty = true;
  Point2 lo{0, 0}, hi{0, 0};
  void add(const Point2& p) {
    if (empty) {
      lo = hi = p;
      empty = false;
    }
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
};

class Writer {
 public:
  Writer(const Bounds& b, const RenderStyle& style) : style_(style) {
    if (!(style.canvas_width > 0 && style.canvas_height > 0)) throw std::invalid_argument("canvas must be positive");
    if (style.palette.empty()) throw std::invalid_argument("palette must not be empty");
    Point2 lo = b.lo, hi = b.hi;
    double extent = std::max(hi.x() - lo.x(), hi.y() - lo.y());
    if (!(extent > 0)) extent = 1;
    const double margin = 0.05 * extent;
    // SVG y runs downwards, so the box is flipped.
    x0_ = lo.x() - margin;
    y0_ = -hi.y() - margin;
    w_ = hi.x() - lo.x() + 2 * margin;
    h_ = hi.y() - lo.y() + 2 * margin;
    if (!(w_ > 0)) w_ = extent;
    if (!(h_ > 0)) h_ = extent;
    unit_ = std::max(w_ / style.canvas_width, h_ / style.canvas_height);
  }

  std::string num(double x) const {
    std::string s = fmt::format("{:.{}f}", x, style_.precision);
    if (s.find_first_not_of("-0.") == std::string::npos) return "0";  // no "-0.000"
    return s;
  }
  std::string pt(const Point2& p) const { return num(p.x()) + "," + num(-p.y()); }

  std::string header() const {
    return fmt::format(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"{} {} {} {}\">\n",
        num(style_.canvas_width), num(style_.canvas_height), num(x0_), num(y0_), num(w_), num(h_));
  }
  double stroke() const { return style_.stroke_width * unit_; }
  double dot() const { return style_.point_size * unit_; }

 private:
  const RenderStyle& style_;
  double x0_ = 0, y0_ = 0, w_ = 1, h_ = 1, unit_ = 1;
};

void require_planar(const Gifs& gifs) {
  if (gifs.dim() != 2) throw std::invalid_argument("SVG rendering needs dimension 2; export JSON instead");
}

Point2 pt2(const Vec& v) { return {v[0], v[1]}; }

}  // namespace

TileGeometry tile_geometry(const Gifs& gifs, const Tile& tile, int depth, bool use_hint) {
  require_planar(gifs);
  if (depth < 0) throw std::invalid_argument("refinement depth must be non-negative");
  TileGeometry out;
  if (use_hint && gifs.hull_hint(tile.component)) {
    Polygon poly;
    for (const Point2& p : *gifs.hull_hint(tile.component)) poly.push_back(pt2(tile.transform.apply(Vec(p))));
    out.polygon = std::move(poly);
    return out;
  }
  const Seeds seeds = attractor_seeds(gifs);
  for (const Path& w : enumerate_paths(gifs.graph(), tile.component, depth)) {
    const Similarity f = compose(tile.transform, map_for_path(gifs, w, false));
    const Vertex end = end_vertex(gifs.graph(), w);
    out.points.push_back(pt2(f.apply(seeds.points.at(static_cast<std::size_t>(end - 1)))));
  }
  return out;
}

std::string render_patch_svg(const Gifs& gifs, const Patch& p, const RenderStyle& style) {
  require_planar(gifs);
  std::vector<TileGeometry> geoms;
  Bounds b;
  for (const Tile& t : p.tiles) {
    geoms.push_back(tile_geometry(gifs, t, style.depth, style.use_hints));
    const TileGeometry& g = geoms.back();
    if (g.polygon) {
      for (const Point2& q : *g.polygon) b.add(q);
    }
    for (const Point2& q : g.points) b.add(q);
  }
  const Writer w(b, style);
  std::string svg = w.header();
  if (p.tiles.empty()) {
    svg += "<!-- warning: empty patch -->\n</svg>\n";
    return svg;
  }

  // Class key: component and scale exponent (or log-scale when there is no
  // exponent), numbered in sorted order.
  auto key = [](const Tile& t) {
    const long long e = t.scale_exponent ? *t.scale_exponent : std::llround(std::log(t.transform.scale()) * 1e6);
    return std::pair<Vertex, long long>(t.component, e);
  };
  std::map<std::pair<Vertex, long long>, std::size_t> colours;
  for (const Tile& t : p.tiles) colours.emplace(key(t), 0);
  std::size_t next = 0;
  for (auto& [k, c] : colours) c = next++;

  const Digraph& g = gifs.graph();
  svg += fmt::format("<g stroke=\"#222222\" stroke-width=\"{}\" stroke-linejoin=\"round\">\n", w.num(w.stroke()));
  for (std::size_t i = 0; i < p.tiles.size(); ++i) {
    const Tile& t = p.tiles[i];
    const std::string& fill = style.palette[colours.at(key(t)) % style.palette.size()];
    svg += fmt::format("<g id=\"tile-{}\" data-address=\"{}.{}\" fill=\"{}\">", i, t.address.k,
                       format_path(g, t.address.sigma), fill);
    const TileGeometry& geo = geoms[i];
    if (geo.polygon) {
      svg += "<polygon points=\"";
      for (std::size_t j = 0; j < geo.polygon->size(); ++j) svg += (j ? " " : "") + w.pt((*geo.polygon)[j]);
      svg += "\"/>";
    }
    for (const Point2& q : geo.points) {
      svg += fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"{}\" stroke=\"none\"/>", w.num(q.x()), w.num(-q.y()),
                         w.num(w.dot() / 2));
    }
    svg += "</g>\n";
  }
  svg += "</g>\n</svg>\n";
  return svg;
}

std::string render_attractor_svg(const Gifs& gifs, const AttractorApprox& approx, Vertex v, const RenderStyle& style) {
  require_planar(gifs);
  if (v < 1 || v > gifs.vertex_count()) throw std::invalid_argument("unknown vertex");
  const Cloud& c = approx.cloud(v);
  if (c.cols() == 0) throw std::invalid_argument("attractor cloud is empty");
  Bounds b;
  for (Eigen::Index i = 0; i < c.cols(); ++i) b.add(Point2(c(0, i), c(1, i)));
  const Writer w(b, style);
  std::string svg = w.header();
  svg += fmt::format("<g fill=\"{}\" stroke=\"none\">\n", style.palette.front());
  const std::string side = w.num(w.dot());
  for (Eigen::Index i = 0; i < c.cols(); ++i) {
    svg += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\"/>\n", w.num(c(0, i) - w.dot() / 2),
                       w.num(-c(1, i) - w.dot() / 2), side, side);
  }
  svg += "</g>\n</svg>\n";
  return svg;
}

}  // namespace gifstile
