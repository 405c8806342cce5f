#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gifstile/attractor.hpp"
#include "gifstile/gifs.hpp"
#include "gifstile/tiling.hpp"

// SVG output for planar patches and attractor clouds.
namespace gifstile {

struct RenderStyle {
  double canvas_width = 800;
  double canvas_height = 800;
  double stroke_width = 0.75;  // canvas units
  double point_size = 1.5;     // canvas units, for point clouds
  int depth = 4;               // refinement depth for tiles without a hint
  bool use_hints = true;
  int precision = 6;           // decimals in coordinates
  // Fill colours cycled over classes (component, scale exponent).
  std::vector<std::string> palette = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2",
                                      "#59a14f", "#edc948", "#b07aa1", "#ff9da7"};
};

struct TileGeometry {
  std::optional<Polygon> polygon;  // from a hull hint
  std::vector<Point2> points;      // refined anchor points otherwise
};

// With a hint for the tile's component: the transformed polygon. Otherwise
// the points T o f_w(x_{w+}) for every path w from the component with
// d(w) <= depth, x_v being the attractor seed of v.
TileGeometry tile_geometry(const Gifs& gifs, const Tile& tile, int depth, bool use_hint = true);

// One <g> per tile in address order, coloured by class. An empty patch gives
// a valid document holding only a warning comment.
std::string render_patch_svg(const Gifs& gifs, const Patch& p, const RenderStyle& style = {});

// Scatter plot of one attractor component. Throws std::invalid_argument for
// an empty cloud.
std::string render_attractor_svg(const Gifs& gifs, const AttractorApprox& approx, Vertex v,
                                 const RenderStyle& style = {});

}  // namespace gifstile
